#ifndef MRSDN_ERLANG_HPP
#define MRSDN_ERLANG_HPP

namespace mrsdn::workload {

/// Erlang-B blocking probability of an M/M/C/C loss system with offered
/// load `erlangs`, via the stable recursion B(0)=1,
/// B(c) = A*B(c-1) / (c + A*B(c-1)).
double erlang_b(double erlangs, int servers);

/// Independent oracle: blocking probability from the stationary
/// distribution of the M/M/C/C birth-death chain, obtained by solving the
/// global balance equations of the generator directly (dense elimination,
/// servers <= 64). Agrees with erlang_b to ~1e-12.
double ctmc_blocking(double lambda_per_s, double mean_hold_s, int servers);

}  // namespace mrsdn::workload

#endif  // MRSDN_ERLANG_HPP
