#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ppk/linalg.hpp"

namespace ppk {

/// A failing evaluation: which condition, at which basis tuple (1-based
/// indices, as reported), and the nonzero residual.
template <class S>
struct Witness {
  std::string id;
  std::vector<int> at;
  Vec<S> residual;
};

/// Outcome of an exact check. `passed` iff no normative condition failed;
/// witnesses are capped at 16 while `failure_count` keeps the full tally.
/// Derived (redundant) conditions are tracked separately: a derived failure
/// with passing primaries points at an implementation bug, not bad input.
template <class S>
struct CheckReport {
  static constexpr std::size_t witness_cap = 16;

  bool passed = true;
  std::size_t failure_count = 0;
  std::vector<Witness<S>> witnesses;
  std::map<std::string, std::size_t> failures_by_id;

  bool derived_passed = true;
  std::size_t derived_failure_count = 0;
  std::vector<Witness<S>> derived_witnesses;

  std::vector<std::string> warnings;

  void record(const std::string& id, std::vector<int> at, Vec<S> residual) {
    passed = false;
    ++failure_count;
    ++failures_by_id[id];
    if (witnesses.size() < witness_cap)
      witnesses.push_back({id, std::move(at), std::move(residual)});
  }

  void record_derived(const std::string& id, std::vector<int> at, Vec<S> residual) {
    derived_passed = false;
    ++derived_failure_count;
    if (derived_witnesses.size() < witness_cap)
      derived_witnesses.push_back({id, std::move(at), std::move(residual)});
  }

  void merge(const CheckReport& o) {
    passed = passed && o.passed;
    failure_count += o.failure_count;
    for (const auto& [id, c] : o.failures_by_id) failures_by_id[id] += c;
    for (const auto& w : o.witnesses)
      if (witnesses.size() < witness_cap) witnesses.push_back(w);
    derived_passed = derived_passed && o.derived_passed;
    derived_failure_count += o.derived_failure_count;
    for (const auto& w : o.derived_witnesses)
      if (derived_witnesses.size() < witness_cap) derived_witnesses.push_back(w);
    warnings.insert(warnings.end(), o.warnings.begin(), o.warnings.end());
  }

  /// Ids of conditions with at least one recorded failure.
  std::vector<std::string> failing_ids() const {
    std::vector<std::string> ids;
    for (const auto& [id, count] : failures_by_id) ids.push_back(id);
    return ids;
  }

  std::size_t failures_for(const std::string& id) const {
    auto it = failures_by_id.find(id);
    return it == failures_by_id.end() ? 0 : it->second;
  }
};

/// Shift a 0-based index tuple to the 1-based convention used in reports.
inline std::vector<int> at_tuple(std::initializer_list<std::size_t> idx) {
  std::vector<int> r;
  for (auto i : idx) r.push_back(static_cast<int>(i) + 1);
  return r;
}

}  // namespace ppk
