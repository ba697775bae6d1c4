#include "oblab/multiquery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oblab {

ObliviousStore::ObliviousStore(std::size_t capacity) : cells_(capacity) {
  if (capacity == 0) throw std::invalid_argument("ObliviousStore: capacity must be >= 1");
}

ObliviousStore::LookupResult ObliviousStore::lookup(double a) {
  LookupResult best{false, 0, 0.0, 0.0};
  for (std::size_t addr = 0; addr < occupied_; ++addr) {
    const StoredRecord rec = cells_.read(addr);
    if (rec.value <= a) best = {true, addr + 1, rec.value, rec.prefix_sum};
  }
  return best;
}

void ObliviousStore::insert_batch(std::span<const StoredRecord> records) {
  if (occupied_ + records.size() > capacity())
    throw std::runtime_error("ObliviousStore: capacity exceeded");

  // Merge in private scratch, then touch every cell: one full read pass and
  // one full write pass regardless of batch content.
  std::vector<StoredRecord> merged;
  merged.reserve(capacity());
  for (std::size_t addr = 0; addr < capacity(); ++addr) {
    const StoredRecord rec = cells_.read(addr);
    if (addr < occupied_) merged.push_back(rec);
  }
  merged.insert(merged.end(), records.begin(), records.end());
  std::stable_sort(merged.begin(), merged.end(),
                   [](const StoredRecord& x, const StoredRecord& y) { return x.value < y.value; });
  merged.resize(capacity());
  for (std::size_t addr = 0; addr < capacity(); ++addr) cells_.write(addr, merged[addr]);
  occupied_ += records.size();
}

double ObliviousStore::greatest_value() const {
  if (occupied_ == 0) throw std::logic_error("ObliviousStore: empty store has no greatest value");
  return cells_.peek(occupied_ - 1).value;
}

BudgetLedger::BudgetLedger(double total_epsilon) : total_(total_epsilon) {
  if (!(total_epsilon > 0.0)) throw std::invalid_argument("BudgetLedger: total epsilon must be > 0");
}

void BudgetLedger::spend(std::size_t t, double epsilon_t) {
  if (!(epsilon_t > 0.0)) throw std::invalid_argument("BudgetLedger: spend must be > 0");
  if (spent_ + epsilon_t > total_ * (1.0 + 1e-12))
    throw std::runtime_error("BudgetLedger: privacy budget exhausted");
  spent_ += epsilon_t;
  spends_.push_back({t, epsilon_t});
}

MultiSearch::MultiSearch(std::vector<double> sorted_values, double epsilon, double beta)
    : dataset_(std::move(sorted_values)),
      oram_(dataset_.capacity()),
      ledger_(epsilon),
      epsilon_(epsilon),
      beta_(beta) {
  if (dataset_.capacity() < 2) throw std::invalid_argument("MultiSearch: need at least 2 records");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("MultiSearch: beta in (0,1)");
  for (std::size_t p = 1; p < dataset_.capacity(); ++p)
    if (dataset_.peek(p) < dataset_.peek(p - 1))
      throw std::invalid_argument("MultiSearch: dataset must be sorted");
}

QueryReport MultiSearch::answer_query(double a, Rng& rng) {
  const std::size_t n = dataset_.capacity();
  QueryReport rep{};

  const bool covered = migrated_ == n || (migrated_ > 0 && oram_.greatest_value() > a);
  if (!covered) {
    const std::size_t t = executions_ + 1;
    const double eps_t = epsilon_ / (static_cast<double>(t) * std::log2(static_cast<double>(n)));
    ledger_.spend(t, eps_t);

    const std::size_t suffix_len = n - migrated_;
    const SearchParams sp(suffix_len, eps_t, beta_ / std::sqrt(static_cast<double>(n)));
    const SearchOutcome found = do_search(dataset_, migrated_, suffix_len, a, sp, rng);

    rep.search_invoked = true;
    rep.epsilon_spent = eps_t;
    rep.search_index = found.index;
    rep.search_correct = found.index == exact_rank(dataset_, migrated_, suffix_len, a);
    all_searches_correct_ = all_searches_correct_ && rep.search_correct;

    // Migration size uses the current t; both uses of max(I, 2t) agree.
    const std::size_t batch_size = std::min(std::max(found.index, 2 * t), suffix_len);
    std::vector<StoredRecord> batch;
    batch.reserve(batch_size);
    for (std::size_t q = 0; q < batch_size; ++q) {
      const double v = dataset_.read(migrated_ + q);
      migrated_running_sum_ += v;
      batch.push_back({v, migrated_running_sum_});
    }
    oram_.insert_batch(batch);
    migrated_ += batch_size;
    executions_ = t;
    rep.migrated_now = batch_size;
  }

  const auto hit = oram_.lookup(a);
  rep.answer = hit.found ? hit.prefix_sum : 0.0;
  rep.records_migrated = migrated_;
  rep.executions = executions_;
  return rep;
}

double MultiSearch::oracle_prefix_sum(double a) const { return exact_prefix_sum(dataset_, a); }

}  // namespace oblab
