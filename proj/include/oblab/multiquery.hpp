#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oblab/prefix.hpp"
#include "oblab/rng.hpp"
#include "oblab/trace.hpp"

namespace oblab {

struct StoredRecord {
  double value;
  double prefix_sum;
};

// Trivial perfectly-oblivious key-value store: a sorted array scanned in
// full. Trace contract: lookup reads the occupied cells 0..M-1 in order;
// insert_batch reads then writes all capacity cells in order. The trace is a
// function of (operation type, M at the time of the op) only.
class ObliviousStore {
 public:
  explicit ObliviousStore(std::size_t capacity);

  std::size_t capacity() const { return cells_.capacity(); }
  std::size_t occupied() const { return occupied_; }

  struct LookupResult {
    bool found;
    std::size_t position;  // 1-based rank among stored records
    double value;
    double prefix_sum;
  };

  // Record with the maximal stored value <= a, or found=false.
  LookupResult lookup(double a);

  // Records must keep the store sorted by value (batches appended by
  // MultiSearch always do). Throws on capacity overflow.
  void insert_batch(std::span<const StoredRecord> records);

  // Largest stored value; CPU-private metadata, no trace events.
  double greatest_value() const;

  const AccessTrace& trace() const { return cells_.trace(); }

 private:
  TracedStore<StoredRecord> cells_;
  std::size_t occupied_ = 0;
};

struct BudgetSpend {
  std::size_t t;
  double epsilon_t;
};

// Sequential-composition bookkeeping: per-execution spends whose running sum
// may never exceed the global budget.
class BudgetLedger {
 public:
  explicit BudgetLedger(double total_epsilon);

  void spend(std::size_t t, double epsilon_t);
  double total() const { return total_; }
  double spent() const { return spent_; }
  const std::vector<BudgetSpend>& spends() const { return spends_; }

 private:
  double total_;
  double spent_ = 0.0;
  std::vector<BudgetSpend> spends_;
};

struct QueryReport {
  double answer;
  bool search_invoked;
  double epsilon_spent;       // 0 on the pure store path
  std::size_t search_index;   // suffix-local boundary, when search_invoked
  std::size_t migrated_now;   // records moved this query
  bool search_correct;        // instrumentation: search result vs exact oracle
  std::size_t records_migrated;  // M after the query
  std::size_t executions;        // completed search executions after the query
};

// Unbounded prefix-sum queries over one sorted dataset: answers from the
// oblivious store when it already covers the query, otherwise runs the noisy
// search on the unmigrated suffix with budget epsilon/(t log2 n) and accuracy
// beta/sqrt(n), migrates max(I, 2t) records with their running prefix sums,
// and then answers from the store.
class MultiSearch {
 public:
  MultiSearch(std::vector<double> sorted_values, double epsilon, double beta);

  QueryReport answer_query(double a, Rng& rng);

  std::size_t executions() const { return executions_; }
  std::size_t migrated() const { return migrated_; }
  const BudgetLedger& ledger() const { return ledger_; }
  bool all_searches_correct() const { return all_searches_correct_; }

  const AccessTrace& dataset_trace() const { return dataset_.trace(); }
  const AccessTrace& store_trace() const { return oram_.trace(); }

  double oracle_prefix_sum(double a) const;  // untraced reference answer

 private:
  TracedStore<double> dataset_;
  ObliviousStore oram_;
  BudgetLedger ledger_;
  double epsilon_;
  double beta_;
  std::size_t migrated_ = 0;    // M
  std::size_t executions_ = 0;  // t - 1
  double migrated_running_sum_ = 0.0;
  bool all_searches_correct_ = true;
};

}  // namespace oblab
