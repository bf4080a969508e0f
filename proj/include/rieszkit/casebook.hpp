#ifndef RIESZKIT_CASEBOOK_HPP
#define RIESZKIT_CASEBOOK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rieszkit/report.hpp"

namespace rieszkit {

/// l0^inf -> C(K): the order continuous operators do not form a directed set.
Report run_directedness_counterexample(int probe = 8);
/// E_K -> l0^inf(NxN): order continuous, order bounded, positive part outside F.
Report run_nonregular_oc_example(int probe = 8, int max_level = 8);
/// Band laws of the order continuous projection on random l0^inf operators.
Report run_projection_demo(std::uint64_t seed = 42, int count = 20);

std::vector<std::string> casebook_names();
/// Runs a case by name; throws InvalidIndex for unknown names.
Report run_case(const std::string& name, int probe = 8);

}  // namespace rieszkit

#endif  // RIESZKIT_CASEBOOK_HPP
