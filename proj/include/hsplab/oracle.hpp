#pragma once

#include <map>
#include <string>
#include <vector>

#include "hsplab/subgroup.hpp"

namespace hsp {

struct QueryRecord {
  int element;
  int label;
};

/// Query-counted oracle interface. Algorithms may only touch f through
/// query(); the counter always equals the transcript length.
class Oracle {
 public:
  virtual ~Oracle() = default;

  /// Returns the label of g, increments the counter, appends to the
  /// transcript. Repeat queries are re-counted.
  int query(int g);

  long query_count() const { return static_cast<long>(transcript_.size()); }
  const std::vector<QueryRecord>& transcript() const { return transcript_; }
  virtual void reset() { transcript_.clear(); }
  const FiniteGroup& group() const { return group_; }

  /// JSON array of {"element": ..., "label": ...} in query order.
  std::string transcript_json() const;

 protected:
  explicit Oracle(FiniteGroup g) : group_(std::move(g)) {}
  virtual int label_of(int g) = 0;

 private:
  FiniteGroup group_;
  std::vector<QueryRecord> transcript_;
};

/// f(x) = f(y) iff x^-1 y in H; labels are the minimum element index of
/// each left coset. Trivial H gives the injective instance f(g) = g.
class HidingOracle : public Oracle {
 public:
  HidingOracle(const FiniteGroup& g, const Subgroup& h);

  /// Harness-side accessor; algorithms must not call this.
  const Subgroup& hidden() const { return hidden_; }

 protected:
  int label_of(int g) override { return labels_[g]; }

 private:
  Subgroup hidden_;
  std::vector<int> labels_;
};

/// f1(g H1) := f(rep(g H1)) over quotient_group(G, H1). Each query costs
/// exactly one base query; hides H/H1 when H1 <= H.
class QuotientOracle : public Oracle {
 public:
  QuotientOracle(Oracle& base, const Subgroup& h1);

  const Quotient& quotient() const { return quot_; }
  Oracle& base() { return base_; }

 protected:
  int label_of(int qi) override { return base_.query(quot_.rep_of[qi]); }

 private:
  QuotientOracle(Oracle& base, Quotient q);
  Oracle& base_;
  Quotient quot_;
};

/// Memoizing wrapper: never issues the same base query twice. Its own
/// transcript still logs every call; compare base counts for savings.
class DedupOracle : public Oracle {
 public:
  explicit DedupOracle(Oracle& base) : Oracle(base.group()), base_(base) {}

  Oracle& base() { return base_; }
  void reset() override {
    Oracle::reset();
    memo_.clear();
  }

 protected:
  int label_of(int g) override;

 private:
  Oracle& base_;
  std::map<int, int> memo_;
};

}  // namespace hsp
