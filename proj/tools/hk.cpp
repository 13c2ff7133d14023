#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hk/verify.hpp"

namespace {

// Writes to the path when given, otherwise to stdout.
std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  return file;
}

hk::ModeKind resolve_mode(const std::string& mode, hk::Family family, int n) {
  if (mode == "auto") return hk::default_mode(family, n);
  return hk::mode_from_name(mode);
}

struct SimulateArgs {
  std::string family;
  int n = 8;
  std::string file;
  std::string mode = "auto";
  long long max_steps = -1;
  std::string out;
  double eps_equal = 1e-9;
  double eps_edge = 1e-9;
};

template <class S>
int run_simulate(const SimulateArgs& a, hk::Family fam) {
  hk::Config<S> c = fam == hk::Family::File ? hk::load_config<S>(a.file)
                                            : hk::make_family<S>(fam, a.n);
  c.tol.eps_equal = a.eps_equal;
  c.tol.eps_edge = a.eps_edge;
  long long cap = a.max_steps;
  if (cap < 0) {
    if (fam == hk::Family::File)
      cap = c.dim == 1 ? hk::default_max_steps(hk::Family::EqualSpaced, c.agents())
                       : hk::default_max_steps(hk::Family::Polygon, c.agents());
    else
      cap = hk::default_max_steps(fam, a.n);
  }
  hk::SimulationResult<S> res;
  if (a.out.empty()) {
    res = hk::simulate(c, cap);
  } else {
    std::ofstream file(a.out);
    if (!file) throw std::runtime_error("cannot open " + a.out + " for writing");
    res = hk::emit_trajectory(c, cap, file);
  }
  std::cout << "family=" << hk::family_name(fam);
  if (fam == hk::Family::File)
    std::cout << " file=" << a.file;
  else if (fam != hk::Family::ReconnectionTriple)
    std::cout << " n=" << a.n;
  std::cout << " agents=" << c.agents() << " mode=" << hk::numeric_traits<S>::name()
            << " frozen=" << (res.frozen ? 1 : 0) << " freeze_time=" << res.freeze_time
            << " steps=" << res.steps << '\n';
  for (const auto& e : res.events) std::cout << "event t=" << e.t << ' ' << e.description << '\n';
  return 0;
}

int cmd_simulate(const SimulateArgs& a) {
  const hk::Family fam = hk::family_from_name(a.family);
  const hk::ModeKind mode = resolve_mode(a.mode, fam, a.n);
  return mode == hk::ModeKind::Exact ? run_simulate<hk::Rat>(a, fam)
                                     : run_simulate<double>(a, fam);
}

int cmd_sweep(const std::string& family, const std::vector<int>& ns, const std::string& mode,
              long long max_steps, const std::string& out) {
  const hk::Family fam = hk::family_from_name(family);
  std::vector<hk::SweepRow> rows;
  for (int n : ns) {
    auto batch = hk::freeze_sweep(fam, {n}, resolve_mode(mode, fam, n), max_steps);
    rows.insert(rows.end(), batch.begin(), batch.end());
  }
  std::ofstream file;
  hk::write_sweep_csv(open_out(out, file), rows);
  return 0;
}

int cmd_fit(const std::string& in) {
  std::ifstream file(in);
  if (!file) throw std::runtime_error("cannot open " + in);
  auto rows = hk::read_sweep_csv(file);
  hk::FitResult fit = hk::fit_exponent(rows);
  std::cout << "a=" << hk::format_double(fit.a) << " b=" << hk::format_double(fit.b)
            << " residual=" << hk::format_double(fit.residual) << " rows=" << fit.rows << '\n';
  return 0;
}

int cmd_walk(int n, long long t, const std::string& what, long long samples, uint64_t seed,
             const std::string& out) {
  std::ofstream file;
  if (what == "hits") {
    hk::write_hits_csv(open_out(out, file), n, t);
    if (samples > 0) {
      const hk::TransitionMatrix P = hk::path_matrix(n);
      const double exact = hk::expected_hits(P, 0, t).h[0].get_d();
      const double mc = hk::mc_hits(P, 0, 0, t, samples, seed);
      std::cerr << "mc_h11=" << hk::format_double(mc) << " exact_h11=" << hk::format_double(exact)
                << " abs_err=" << hk::format_double(std::abs(mc - exact)) << " samples=" << samples
                << " seed=" << seed << '\n';
    }
    return 0;
  }
  if (what == "q") {
    hk::write_return_csv(open_out(out, file), n, t);
    return 0;
  }
  if (what == "claim1") {
    hk::FoldingReport rep = hk::folding_identity(n, t);
    std::cout << "n=" << n << " t_max=" << t << " identity="
              << (rep.identity_ok ? "ok" : "violated") << " inequality="
              << (rep.inequality_ok ? "ok" : "violated");
    if (rep.first_violation_t >= 0) std::cout << " first_violation_t=" << rep.first_violation_t;
    std::cout << '\n';
    return rep.identity_ok && rep.inequality_ok ? 0 : 1;
  }
  if (what == "claim2") {
    hk::BinomialDecayResult res = hk::binomial_decay(n, 5);
    std::cout << "m_max=" << res.m_max << " kappa=" << hk::to_string(res.kappa) << " argmax_m="
              << res.argmax_m << " kappa_lt_1=" << (res.less_than_one ? "yes" : "no")
              << " inequality=" << (res.inequality_ok ? "ok" : "violated")
              << " decay_threshold=" << res.decay_threshold << '\n';
    return res.less_than_one && res.inequality_ok && res.tail_ok ? 0 : 1;
  }
  throw std::invalid_argument("unknown --what: " + what);
}

int cmd_delta(int n, const std::string& kappa_text, long long t, const std::string& out) {
  const hk::Rat kappa = hk::parse_rational(kappa_text);
  auto states = hk::delta_recurrence(n, kappa, t);
  bool agree = true;
  if (t >= 1) {
    const auto closed = hk::delta_closed_form(n, kappa, t);
    agree = states.back().delta == closed &&
            closed[0] == hk::delta_first_from_hits(n, kappa, t);
  }
  std::ofstream file;
  hk::write_delta_csv(open_out(out, file), states);
  std::cerr << "n=" << n << " kappa=" << hk::to_string(kappa) << " t=" << t
            << " recurrence/closed-form/visit-count agreement=" << (agree ? "ok" : "VIOLATED")
            << '\n';
  return agree ? 0 : 1;
}

int cmd_verify(const std::string& suite) {
  auto results = hk::run_suite(suite);
  return hk::print_report(std::cout, results) == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bounded-confidence averaging: simulator, sweeps, and verification"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "run one configuration to freezing");
  simulate->add_option("--family", sim.family, "equal-spaced|dumbbell-chain|kurz|polygon|triple|file")
      ->required();
  simulate->add_option("--n", sim.n, "family size parameter");
  simulate->add_option("--file", sim.file, "input path for --family file");
  simulate->add_option("--mode", sim.mode, "exact|float|auto (default auto)");
  simulate->add_option("--max-steps", sim.max_steps, "step cap (default: family guard)");
  simulate->add_option("--out", sim.out, "write long-form trajectory CSV here");
  simulate->add_option("--eps-equal", sim.eps_equal, "float-mode coincidence tolerance");
  simulate->add_option("--eps-edge", sim.eps_edge, "float-mode reach tolerance");

  std::string sw_family, sw_mode = "auto", sw_out;
  std::vector<int> sw_ns;
  long long sw_max_steps = -1;
  auto* sweep = app.add_subcommand("sweep", "freeze-time sweep over a size list");
  sweep->add_option("--family", sw_family, "equal-spaced|dumbbell-chain|kurz|polygon|triple")
      ->required();
  sweep->add_option("--ns", sw_ns, "comma-separated sizes")->required()->delimiter(',');
  sweep->add_option("--mode", sw_mode, "exact|float|auto (default auto)");
  sweep->add_option("--max-steps", sw_max_steps, "step cap override");
  sweep->add_option("--out", sw_out, "CSV output path (default stdout)");

  std::string fit_in;
  auto* fit = app.add_subcommand("fit", "log-log exponent fit of a sweep CSV");
  fit->add_option("--in", fit_in, "sweep CSV path")->required();

  int walk_n = 5;
  long long walk_t = 25, walk_samples = 0;
  uint64_t walk_seed = 1;
  std::string walk_what, walk_out;
  auto* walk = app.add_subcommand("walk", "lazy-walk scans and identities");
  walk->add_option("--n", walk_n, "path length / cycle half-length; scan ceiling for claim2");
  walk->add_option("--t", walk_t, "time horizon");
  walk->add_option("--what", walk_what, "hits|q|claim1|claim2")->required();
  walk->add_option("--samples", walk_samples, "Monte Carlo cross-check sample count (hits only)");
  walk->add_option("--seed", walk_seed, "Monte Carlo seed");
  walk->add_option("--out", walk_out, "CSV output path (default stdout)");

  int delta_n = 5;
  long long delta_t = 25;
  std::string delta_kappa = "2", delta_out;
  auto* delta = app.add_subcommand("delta", "kicked averaging recursion series");
  delta->add_option("--n", delta_n, "chain length");
  delta->add_option("--kappa", delta_kappa, "kick size, decimal or p/q");
  delta->add_option("--t", delta_t, "horizon");
  delta->add_option("--out", delta_out, "CSV output path (default stdout)");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--suite", suite, "all|core|walks|theorem1|scaling");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (sweep->parsed()) return cmd_sweep(sw_family, sw_ns, sw_mode, sw_max_steps, sw_out);
    if (fit->parsed()) return cmd_fit(fit_in);
    if (walk->parsed()) return cmd_walk(walk_n, walk_t, walk_what, walk_samples, walk_seed, walk_out);
    if (delta->parsed()) return cmd_delta(delta_n, delta_kappa, delta_t, delta_out);
    if (verify->parsed()) return cmd_verify(suite);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
