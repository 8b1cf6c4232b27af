#ifndef SIRSV_HITTING_HPP
#define SIRSV_HITTING_HPP

#include <Eigen/Dense>

#include "sirsv/generator.hpp"

namespace sirsv {

// Expected hitting times of the final set Y0 (no infected node), one entry
// per state; zero on Y0 itself. Solves (-Q restricted to the transient
// class) h = 1.
Eigen::VectorXd expected_hitting_times_final_set(const GeneratorMatrix& q);

double expected_hitting_time_final_set(const GeneratorMatrix& q,
                                       const NetworkConfiguration& start);

}  // namespace sirsv

#endif
