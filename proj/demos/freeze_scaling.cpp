// Freeze-time scaling at a glance: sweeps a family over doubling sizes and
// fits T ~ a * n^b on the log-log data.
//
// usage: freeze_scaling [family] [n_min] [n_max]

#include <cstdlib>
#include <iostream>

#include "hk/sweep.hpp"

int main(int argc, char** argv) {
  const std::string family = argc > 1 ? argv[1] : "dumbbell-chain";
  const int n_min = argc > 2 ? std::atoi(argv[2]) : 16;
  const int n_max = argc > 3 ? std::atoi(argv[3]) : 128;

  std::vector<int> ns;
  for (int n = n_min; n <= n_max; n *= 2) ns.push_back(n);
  auto rows = hk::freeze_sweep(hk::family_from_name(family), ns, hk::ModeKind::Float);
  hk::write_sweep_csv(std::cout, rows);

  auto fit = hk::fit_exponent(rows);
  std::cout << "T ~ " << hk::format_double(fit.a) << " * n^" << hk::format_double(fit.b)
            << " (rms log residual " << hk::format_double(fit.residual) << ")\n";
  return 0;
}
