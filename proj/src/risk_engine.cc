// Copyright 2026 The drisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "drisk/risk_engine.h"

#include <algorithm>
#include <atomic>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "partition.h"

namespace drisk {
namespace {

bool Retained(double pk_product, double epsilon) {
  return pk_product >= epsilon;
}

// The single formula every entry point uses for one split.
struct TermParts {
  double likelihood;
  double consequence;
  double term;
};

inline TermParts ComputeTerm(double pk_product, std::uint32_t frequency,
                             double alpha, double total_weight,
                             double known_weight) {
  TermParts t;
  t.likelihood = pk_product / static_cast<double>(frequency);
  // Both weights are ascending-order sums of the same nonnegative
  // contributions with the known ones a subset, so this is never negative.
  t.consequence = total_weight - known_weight;
  t.term = (t.likelihood * alpha) * t.consequence;
  return t;
}

inline bool Improves(double term, AttributeSubset mask, double best_term,
                     AttributeSubset best_mask) {
  return term > best_term || (term == best_term && PrefersSplit(mask, best_mask));
}

absl::Status CheckInputs(const Dataset& dataset, const SchemaConfig& config) {
  if (absl::Status s = CheckConfig(config); !s.ok()) return s;
  if (dataset.columns() != config.AttributeNames()) {
    return absl::InvalidArgumentError(
        "dataset columns do not match the schema attributes");
  }
  if (dataset.num_records() == 0) {
    return absl::InvalidArgumentError("risk needs at least one record");
  }
  return absl::OkStatus();
}

absl::Status CheckSomeNonemptyRetained(const SchemaConfig& config) {
  for (const auto& a : config.attributes) {
    if (Retained(a.publicly_known_prob, config.params.prune_epsilon)) {
      return absl::OkStatus();
    }
  }
  return absl::FailedPreconditionError(absl::StrCat(
      "prune_epsilon ", config.params.prune_epsilon,
      " removes every nonempty known set; lower prune_epsilon"));
}

std::uint64_t PrunedCount(std::size_t m, std::uint64_t retained) {
  // 2^64 - retained wraps to the right value when m == 64.
  const std::uint64_t all = m >= 64 ? 0 : (std::uint64_t{1} << m);
  return all - retained;
}

// Per-cell W(j) * W(value); the sentinel carries no weight.
struct CellWeights {
  std::vector<std::vector<double>> contribution;  // [attribute][record]
  std::vector<double> total;                      // [record]
};

double CellWeight(const AttributeSpec& spec, const std::string& value,
                  const std::string& sentinel) {
  const double value_weight = value == sentinel ? 0.0 : spec.ValueWeight(value);
  return spec.sensitivity_weight * value_weight;
}

CellWeights ComputeCellWeights(const Dataset& dataset,
                               const SchemaConfig& config) {
  const std::size_t n = dataset.num_records();
  const std::size_t m = dataset.num_attributes();
  CellWeights w;
  w.contribution.assign(m, std::vector<double>(n));
  w.total.assign(n, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> by_code(dataset.cardinality(j));
    for (std::uint32_t c = 0; c < by_code.size(); ++c) {
      by_code[c] = CellWeight(config.attributes[j], dataset.value_of(j, c),
                              dataset.sentinel());
    }
    std::span<const std::uint32_t> codes = dataset.column_codes(j);
    for (std::size_t r = 0; r < n; ++r) {
      w.contribution[j][r] = by_code[codes[r]];
      w.total[r] += w.contribution[j][r];
    }
  }
  return w;
}

std::vector<double> RecordContributions(const Dataset& dataset,
                                        std::size_t record,
                                        const SchemaConfig& config,
                                        double& total) {
  std::vector<double> c(dataset.num_attributes());
  total = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    c[j] = CellWeight(config.attributes[j], dataset.cell(record, j),
                      dataset.sentinel());
    total += c[j];
  }
  return c;
}

// Walks the retained lattice below `mask` in canonical order, calling
// visit(mask, pk_product) on each retained node. Stops early once `budget`
// nodes have been visited; returns the number visited.
template <typename Visit>
std::uint64_t WalkLattice(const SchemaConfig& config, AttributeSubset mask,
                          double pk_product, std::uint64_t budget,
                          Visit&& visit) {
  const std::size_t m = config.attribute_count();
  const double epsilon = config.params.prune_epsilon;
  std::uint64_t visited = 0;
  auto walk = [&](auto&& self, AttributeSubset t, double pk) -> void {
    if (visited >= budget) return;
    ++visited;
    visit(t, pk);
    for (std::size_t k = static_cast<std::size_t>(t.highest() + 1); k < m; ++k) {
      const double child_pk = pk * config.attributes[k].publicly_known_prob;
      if (Retained(child_pk, epsilon)) self(self, t.With(k), child_pk);
    }
  };
  walk(walk, mask, pk_product);
  return visited;
}

// Results of one top-level branch of the lattice for every record.
struct BranchResult {
  std::vector<long double> sum;
  std::vector<double> best_term;
  std::vector<AttributeSubset> best_mask;
};

class StreamingEvaluator {
 public:
  StreamingEvaluator(const Dataset& dataset, const SchemaConfig& config,
                     const CellWeights& weights)
      : dataset_(dataset),
        config_(config),
        weights_(weights),
        n_(dataset.num_records()),
        m_(dataset.num_attributes()),
        root_(internal::Partition::Whole(n_)),
        parts_(m_ + 1),
        known_(m_ + 1, std::vector<double>(n_)),
        refiner_(n_) {}

  BranchResult RunBranch(std::size_t attribute) {
    BranchResult result;
    result.sum.assign(n_, 0.0L);
    result.best_term.assign(n_, -1.0);
    result.best_mask.assign(n_, AttributeSubset());
    out_ = &result;

    const double pk = config_.attributes[attribute].publicly_known_prob;
    const std::vector<double>& c = weights_.contribution[attribute];
    for (std::size_t r = 0; r < n_; ++r) known_[1][r] = 0.0 + c[r];
    refiner_.Refine(root_, dataset_.column_codes(attribute),
                    dataset_.cardinality(attribute), parts_[1]);
    Visit(AttributeSubset::Single(attribute), pk, 1, parts_[1]);
    out_ = nullptr;
    return result;
  }

 private:
  void Visit(AttributeSubset mask, double pk, std::size_t depth,
             const internal::Partition& part) {
    const double alpha = config_.params.alpha;
    const double* known = known_[depth].data();
    const double* total = weights_.total.data();
    long double* sum = out_->sum.data();
    double* best_term = out_->best_term.data();
    AttributeSubset* best_mask = out_->best_mask.data();
    const bool singletons = part.AllSingletons();
    for (std::size_t r = 0; r < n_; ++r) {
      const std::uint32_t f = singletons ? 1u : part.sizes[part.group_of[r]];
      const double term = ComputeTerm(pk, f, alpha, total[r], known[r]).term;
      sum[r] += term;
      if (Improves(term, mask, best_term[r], best_mask[r])) {
        best_term[r] = term;
        best_mask[r] = mask;
      }
    }

    const double epsilon = config_.params.prune_epsilon;
    for (std::size_t k = static_cast<std::size_t>(mask.highest() + 1); k < m_;
         ++k) {
      const double child_pk = pk * config_.attributes[k].publicly_known_prob;
      if (!Retained(child_pk, epsilon)) continue;
      const std::vector<double>& c = weights_.contribution[k];
      double* child_known = known_[depth + 1].data();
      for (std::size_t r = 0; r < n_; ++r) child_known[r] = known[r] + c[r];
      if (singletons) {
        // Every finer projection of a unique record is still unique.
        Visit(mask.With(k), child_pk, depth + 1, part);
      } else {
        refiner_.Refine(part, dataset_.column_codes(k), dataset_.cardinality(k),
                        parts_[depth + 1]);
        Visit(mask.With(k), child_pk, depth + 1, parts_[depth + 1]);
      }
    }
  }

  const Dataset& dataset_;
  const SchemaConfig& config_;
  const CellWeights& weights_;
  const std::size_t n_;
  const std::size_t m_;
  const internal::Partition root_;
  std::vector<internal::Partition> parts_;  // [depth]
  std::vector<std::vector<double>> known_;  // [depth][record]
  internal::Refiner refiner_;
  BranchResult* out_ = nullptr;
};

}  // namespace

std::vector<double> RiskReport::Totals() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.total);
  return out;
}

double RiskReport::MaxTotal() const {
  double best = 0.0;
  for (const auto& r : records) best = std::max(best, r.total);
  return best;
}

double RiskReport::MeanTotal() const {
  if (records.empty()) return 0.0;
  long double sum = 0.0L;
  for (const auto& r : records) sum += r.total;
  return static_cast<double>(sum / static_cast<long double>(records.size()));
}

double PkProduct(const SchemaConfig& config, AttributeSubset mask) {
  double p = 1.0;
  for (std::size_t j : mask.Members()) {
    p *= config.attributes[j].publicly_known_prob;
  }
  return p;
}

absl::StatusOr<double> Likelihood(const Dataset& dataset,
                                  const FrequencyIndex& index,
                                  std::size_t record, AttributeSubset known,
                                  const SchemaConfig& config) {
  absl::StatusOr<std::uint32_t> f = index.Frequency(dataset, record, known);
  if (!f.ok()) return f.status();
  return PkProduct(config, known) / static_cast<double>(*f);
}

double Consequence(const Dataset& dataset, std::size_t record,
                   AttributeSubset unknown, const SchemaConfig& config) {
  double sum = 0.0;
  for (std::size_t j : unknown.Members()) {
    sum += CellWeight(config.attributes[j], dataset.cell(record, j),
                      dataset.sentinel());
  }
  return sum;
}

absl::StatusOr<std::uint64_t> CountKnownSets(const SchemaConfig& config) {
  if (config.attribute_count() > kMaxAttributes) {
    return absl::ResourceExhaustedError(
        absl::StrCat("at most ", kMaxAttributes, " attributes are supported"));
  }
  const std::uint64_t visited =
      WalkLattice(config, AttributeSubset::Empty(), 1.0, kMaxKnownSets + 1,
                  [](AttributeSubset, double) {});
  if (visited > kMaxKnownSets) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "more than ", kMaxKnownSets,
        " known sets survive pruning; raise prune_epsilon"));
  }
  return visited;
}

absl::StatusOr<std::vector<AttributeSubset>> EnumerateKnownSets(
    const SchemaConfig& config) {
  absl::StatusOr<std::uint64_t> count = CountKnownSets(config);
  if (!count.ok()) return count.status();
  std::vector<AttributeSubset> out;
  out.reserve(*count);
  WalkLattice(config, AttributeSubset::Empty(), 1.0, *count,
              [&out](AttributeSubset mask, double) { out.push_back(mask); });
  std::sort(out.begin(), out.end());
  return out;
}

absl::StatusOr<std::vector<SplitTerm>> SplitTerms(const Dataset& dataset,
                                                  const FrequencyIndex& index,
                                                  std::size_t record,
                                                  const SchemaConfig& config) {
  if (absl::Status s = CheckInputs(dataset, config); !s.ok()) return s;
  absl::StatusOr<std::vector<AttributeSubset>> masks = EnumerateKnownSets(config);
  if (!masks.ok()) return masks.status();
  if (record >= dataset.num_records()) {
    return absl::OutOfRangeError(absl::StrCat("record ", record, " out of range"));
  }
  double total = 0.0;
  const std::vector<double> c =
      RecordContributions(dataset, record, config, total);
  std::vector<SplitTerm> out;
  out.reserve(masks->size());
  for (AttributeSubset mask : *masks) {
    absl::StatusOr<std::uint32_t> f = index.Frequency(dataset, record, mask);
    if (!f.ok()) return f.status();
    double known = 0.0;
    for (std::size_t j : mask.Members()) known += c[j];
    const TermParts t = ComputeTerm(PkProduct(config, mask), *f,
                                    config.params.alpha, total, known);
    out.push_back({mask, t.likelihood, t.consequence, t.term});
  }
  return out;
}

absl::StatusOr<RiskBreakdown> RecordRisk(const Dataset& dataset,
                                         const FrequencyIndex& index,
                                         std::size_t record,
                                         const SchemaConfig& config) {
  if (absl::Status s = CheckInputs(dataset, config); !s.ok()) return s;
  if (absl::Status s = CheckSomeNonemptyRetained(config); !s.ok()) return s;
  absl::StatusOr<std::uint64_t> retained = CountKnownSets(config);
  if (!retained.ok()) return retained.status();
  if (record >= dataset.num_records()) {
    return absl::OutOfRangeError(absl::StrCat("record ", record, " out of range"));
  }
  if (!index.Contains(AttributeSubset::Empty()) ||
      index.num_records() != dataset.num_records()) {
    return absl::FailedPreconditionError("index was not built from this dataset");
  }

  const std::size_t m = config.attribute_count();
  const double alpha = config.params.alpha;
  const double epsilon = config.params.prune_epsilon;
  double total_weight = 0.0;
  const std::vector<double> c =
      RecordContributions(dataset, record, config, total_weight);

  RiskBreakdown out;
  out.record_index = record;
  out.pruned_mask_count = PrunedCount(m, *retained);
  double best_term = -1.0;
  absl::Status status;

  long double total =
      ComputeTerm(1.0, index.GroupSize(AttributeSubset::Empty(), 0), alpha,
                  total_weight, 0.0)
          .term;

  long double branch = 0.0L;
  auto walk = [&](auto&& self, AttributeSubset mask, double pk,
                  std::uint32_t parent_group, double known) -> void {
    const auto top = static_cast<std::size_t>(mask.highest());
    std::optional<std::uint32_t> group =
        index.ChildGroup(mask, parent_group, dataset.code(record, top));
    if (!group) {
      status = absl::FailedPreconditionError(
          absl::StrCat("mask ", mask.bits(), " is not indexed"));
      return;
    }
    const double term =
        ComputeTerm(pk, index.GroupSize(mask, *group), alpha, total_weight, known)
            .term;
    branch += term;
    if (Improves(term, mask, best_term, out.max_split)) {
      best_term = term;
      out.max_split = mask;
    }
    for (std::size_t k = top + 1; k < m && status.ok(); ++k) {
      const double child_pk = pk * config.attributes[k].publicly_known_prob;
      if (Retained(child_pk, epsilon)) {
        self(self, mask.With(k), child_pk, *group, known + c[k]);
      }
    }
  };
  for (std::size_t j = 0; j < m; ++j) {
    const double pk = config.attributes[j].publicly_known_prob;
    if (!Retained(pk, epsilon)) continue;
    branch = 0.0L;
    walk(walk, AttributeSubset::Single(j), pk, 0, 0.0 + c[j]);
    if (!status.ok()) return status;
    total += branch;
  }
  out.total = static_cast<double>(total);
  out.max_term = best_term;
  return out;
}

absl::StatusOr<RiskReport> DatasetRisk(const Dataset& dataset,
                                       const SchemaConfig& config,
                                       RiskOptions options) {
  if (absl::Status s = CheckInputs(dataset, config); !s.ok()) return s;
  if (absl::Status s = CheckSomeNonemptyRetained(config); !s.ok()) return s;
  absl::StatusOr<std::uint64_t> retained = CountKnownSets(config);
  if (!retained.ok()) return retained.status();

  const std::size_t n = dataset.num_records();
  const std::size_t m = dataset.num_attributes();
  const double alpha = config.params.alpha;
  const CellWeights weights = ComputeCellWeights(dataset, config);

  std::vector<long double> totals(n);
  std::vector<double> best_term(n, -1.0);
  std::vector<AttributeSubset> best_mask(n);
  for (std::size_t r = 0; r < n; ++r) {
    totals[r] = ComputeTerm(1.0, static_cast<std::uint32_t>(n), alpha,
                            weights.total[r], 0.0)
                    .term;
  }

  std::vector<std::size_t> branches;
  for (std::size_t j = 0; j < m; ++j) {
    if (Retained(config.attributes[j].publicly_known_prob,
                 config.params.prune_epsilon)) {
      branches.push_back(j);
    }
  }

  // Branches finish in any order but are folded into the totals strictly in
  // ascending order, which keeps the result independent of thread count.
  std::mutex mu;
  std::vector<std::unique_ptr<BranchResult>> pending(branches.size());
  std::size_t next_fold = 0;
  auto fold_ready = [&]() {
    while (next_fold < pending.size() && pending[next_fold] != nullptr) {
      const BranchResult& b = *pending[next_fold];
      for (std::size_t r = 0; r < n; ++r) {
        totals[r] += b.sum[r];
        if (Improves(b.best_term[r], b.best_mask[r], best_term[r], best_mask[r])) {
          best_term[r] = b.best_term[r];
          best_mask[r] = b.best_mask[r];
        }
      }
      pending[next_fold].reset();
      ++next_fold;
    }
  };

  std::atomic<std::size_t> next_branch{0};
  auto worker = [&]() {
    StreamingEvaluator evaluator(dataset, config, weights);
    for (std::size_t i = next_branch++; i < branches.size(); i = next_branch++) {
      auto result = std::make_unique<BranchResult>(evaluator.RunBranch(branches[i]));
      std::lock_guard<std::mutex> lock(mu);
      pending[i] = std::move(result);
      fold_ready();
    }
  };

  unsigned threads = options.threads != 0
                         ? options.threads
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(branches.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  RiskReport report;
  report.retained_mask_count = *retained;
  report.pruned_mask_count = PrunedCount(m, *retained);
  report.records.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    RiskBreakdown& b = report.records[r];
    b.record_index = r;
    b.total = static_cast<double>(totals[r]);
    b.max_split = best_mask[r];
    b.max_term = best_term[r];
    b.pruned_mask_count = report.pruned_mask_count;
  }
  return report;
}

}  // namespace drisk
