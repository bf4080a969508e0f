#include "rieszkit/report.hpp"

#include <sstream>

namespace rieszkit {

Json scalar_json(const Scalar& q) { return to_string(q); }

Json element_json(const Element& x) {
  Json j;
  j["space"] = x.space().name();
  j["value"] = x.to_string();
  return j;
}

Json completion_json(const CompletionElement& x) {
  Json j;
  j["space"] = x.space().name();
  j["value"] = x.to_string();
  j["in_space"] = x.is_member();
  return j;
}

Json certificate_json(const ConvergenceCertificate& c) {
  Json j;
  j["verdict"] = to_string(c.verdict);
  j["rule"] = c.rule;
  j["order_bound"] = scalar_json(c.order_bound);
  if (c.family) j["dominating_family"] = c.family->describe();
  if (c.minorant) j["minorant"] = element_json(*c.minorant);
  if (c.witness) {
    j["witness"] = {c.witness->row, c.witness->col};
    j["observed"] = scalar_json(c.observed);
    j["expected"] = scalar_json(c.expected);
  }
  if (c.ambient_witness) j["ambient_witness"] = true;
  j["explanation"] = c.explanation;
  return j;
}

Json order_continuity_json(const OrderContinuityResult& r) {
  Json j;
  j["order_continuous"] = r.order_continuous;
  j["route"] = r.route;
  Json certs = Json::array();
  for (std::size_t i = 0; i < r.certificates.size(); ++i) {
    Json c;
    c["claim"] = r.certificates[i].first;
    c["sequence"] = r.sequences[i].second.to_string();
    c["limit"] = element_json(r.limits[i].second);
    c["certificate"] = certificate_json(r.certificates[i].second);
    certs.push_back(c);
  }
  j["certificates"] = certs;
  if (!r.unit_check.empty()) j["unit_check"] = r.unit_check;
  return j;
}

Json witness_json(const Witness& w) {
  Json j;
  j["route"] = w.route;
  j["x0"] = w.x0.to_string(w.f.domain);
  if (w.coordinate) j["coordinate"] = {w.coordinate->row, w.coordinate->col};
  j["functional"] = w.f.to_string();
  j["vector"] = element_json(w.v);
  j["scale"] = scalar_json(w.scale);
  j["transcript"] = w.transcript;
  j["verified"] = w.verified;
  return j;
}

Json completion_operator_json(const CompletionOperator& t) {
  Json j;
  j["domain"] = t.domain().name();
  j["codomain"] = t.codomain().name();
  j["in_codomain"] = t.in_codomain();
  j["description"] = t.to_string();
  return j;
}

Json classification_json(const PairClassification& c) {
  Json j;
  j["E"] = c.e.name();
  j["F"] = c.f.name();
  j["F_atomic"] = c.f_atomic;
  j["E_atomic_codim_le_1"] = c.e_atomic_small_codim;
  j["pervasive"] = c.pervasive;
  Json list = Json::array();
  for (const auto& k : c.conclusions) {
    Json e;
    e["key"] = k.key;
    e["holds"] = k.holds;
    e["basis"] = k.basis;
    if (k.reconstructed) e["reconstructed"] = true;
    list.push_back(e);
  }
  j["conclusions"] = list;
  return j;
}

Json Report::to_json() const {
  Json j;
  j["command"] = command;
  j["verdict"] = verdict;
  j["theorem_refs"] = theorem_refs;
  j["certificate"] = certificate;
  j["oracle"] = oracle;
  j["engine_version"] = kEngineVersion;
  return j;
}

namespace {

void markdown_block(std::ostringstream& out, const Json& j, int depth) {
  std::string indent(2 * depth, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive()) {
        out << indent << "- **" << k << "**: " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      } else {
        out << indent << "- **" << k << "**\n";
        markdown_block(out, v, depth + 1);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_primitive()) {
        out << indent << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      } else {
        out << indent << "-\n";
        markdown_block(out, v, depth + 1);
      }
    }
  } else {
    out << indent << "- " << j.dump() << "\n";
  }
}

}  // namespace

std::string Report::to_markdown() const {
  std::ostringstream out;
  out << "# " << command << "\n\n";
  out << "**Verdict:** " << verdict << "\n\n";
  if (!theorem_refs.empty()) {
    out << "## References\n\n";
    for (const auto& r : theorem_refs) out << "- " << r << "\n";
    out << "\n";
  }
  if (!certificate.empty()) {
    out << "## Certificate\n\n";
    markdown_block(out, certificate, 0);
    out << "\n";
  }
  if (!oracle.empty()) {
    out << "## Oracle\n\n";
    markdown_block(out, oracle, 0);
    out << "\n";
  }
  out << "_" << kEngineVersion << "_\n";
  return out.str();
}

}  // namespace rieszkit
