#ifndef RIESZKIT_REPORT_HPP
#define RIESZKIT_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "rieszkit/order_calculus.hpp"

namespace rieszkit {

using Json = nlohmann::ordered_json;

inline constexpr const char* kEngineVersion = "rieszkit 0.1.0";

struct Report {
  std::string command;
  std::string verdict;
  std::vector<std::string> theorem_refs;
  Json certificate = Json::object();
  Json oracle = Json::object();
  bool refuted = false;  // the verdict is a "no": exit code 1 on the command line
  bool verified = true;  // every attached certificate re-checked

  Json to_json() const;
  std::string to_markdown() const;
};

Json scalar_json(const Scalar& q);
Json element_json(const Element& x);
Json completion_json(const CompletionElement& x);
Json certificate_json(const ConvergenceCertificate& c);
Json order_continuity_json(const OrderContinuityResult& r);
Json witness_json(const Witness& w);
Json completion_operator_json(const CompletionOperator& t);
Json classification_json(const PairClassification& c);

}  // namespace rieszkit

#endif  // RIESZKIT_REPORT_HPP
