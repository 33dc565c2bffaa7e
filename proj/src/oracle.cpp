#include "hsplab/oracle.hpp"

#include "json.hpp"

namespace hsp {

int Oracle::query(int g) {
  if (g < 0 || g >= group_.order())
    throw Error(Errc::Domain, "query outside the group: " + std::to_string(g));
  int label = label_of(g);
  transcript_.push_back({g, label});
  return label;
}

std::string Oracle::transcript_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : transcript_)
    arr.push_back({{"element", r.element}, {"label", r.label}});
  return arr.dump();
}

HidingOracle::HidingOracle(const FiniteGroup& g, const Subgroup& h)
    : Oracle(g), hidden_(h) {
  if (!g.same(h.group) || !is_subgroup(g, h.elements))
    throw Error(Errc::NotAGroup, "hidden set is not a subgroup of G");
  labels_ = left_cosets(g, hidden_).rep_of;
}

QuotientOracle::QuotientOracle(Oracle& base, const Subgroup& h1)
    : QuotientOracle(base, quotient_group(base.group(), h1)) {}

QuotientOracle::QuotientOracle(Oracle& base, Quotient q)
    : Oracle(q.group), base_(base), quot_(std::move(q)) {}

int DedupOracle::label_of(int g) {
  auto it = memo_.find(g);
  if (it != memo_.end()) return it->second;
  int label = base_.query(g);
  memo_.emplace(g, label);
  return label;
}

}  // namespace hsp
