#ifndef RIESZKIT_COMMANDS_HPP
#define RIESZKIT_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rieszkit/report.hpp"
#include "rieszkit/specfile.hpp"

namespace rieszkit {

struct CommandOptions {
  std::string op;  // operator name in the spec file; first one when empty
  int probe = 8;   // spot-check depth for symbolic certificates
  std::uint64_t seed = 42;
  int level = 8;  // oracle truncation level
  int depth = 3;  // grid oracle depth
  int bound = 6;  // dominating search size bound
  std::string e, f;
};

Report check_order_bounded_report(const Operator& t);
Report check_order_continuous_report(const Operator& t, int probe);
Report positive_part_report(const Operator& t);
Report project_oc_report(const Operator& t);
Report witness_report(const Operator& t);
Report classify_report(const SpaceDesc& e, const SpaceDesc& f);

std::vector<std::string> oracle_names();
Report oracle_report(const std::string& name, const SpecFile* spec, const CommandOptions& opts);

/// `command` is one of: check, positive-part, project-oc, witness-pervasive,
/// classify, casebook, oracle. `args` holds the words after it.
Report dispatch(const std::string& command, const std::vector<std::string>& args, const SpecFile* spec,
                const CommandOptions& opts);
/// Runs every directive of the spec file.
std::vector<Report> run_directives(const SpecFile& spec, const CommandOptions& opts);

}  // namespace rieszkit

#endif  // RIESZKIT_COMMANDS_HPP
