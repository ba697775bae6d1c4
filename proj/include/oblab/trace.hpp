#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oblab {

enum class AccessKind : std::uint8_t { Read = 0, Write = 1 };

// One memory operation as seen by the adversary: what was done and where,
// never the value moved.
struct AccessEvent {
  AccessKind kind;
  std::uint64_t address;
  std::uint64_t step;  // 0,1,2,... position within the owning trace

  bool operator==(const AccessEvent&) const = default;
};

// Append-only record of the ordered accesses one store has served.
class AccessTrace {
 public:
  void append(AccessKind kind, std::uint64_t address) {
    events_.push_back({kind, address, static_cast<std::uint64_t>(events_.size())});
  }

  // Concatenation for experiments spanning several stores; steps are
  // renumbered so the combined trace is again gap-free.
  void append_all(const AccessTrace& other) {
    events_.reserve(events_.size() + other.events_.size());
    for (const auto& e : other.events_) append(e.kind, e.address);
  }

  const std::vector<AccessEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  void clear() { events_.clear(); }

  std::size_t read_count() const;
  std::size_t write_count() const;

  // One event per line: step,kind,address with kind in {R,W}.
  std::string to_csv() const;

  bool operator==(const AccessTrace&) const = default;

 private:
  std::vector<AccessEvent> events_;
};

// Coarsenings of a trace into finite token alphabets for the auditor.
// Every projection is a deterministic function of the trace, so a bound on
// the projected distributions' divergence never exceeds the trace-level one.
enum class Projection {
  Full,            // (kind, address) per event
  AddressesOnly,   // address per event
  LengthOnly,      // single token: event count
  IntervalSummary  // (min,max) address per maximal non-decreasing run
};

using TokenSeq = std::vector<std::uint64_t>;

TokenSeq project_trace(const AccessTrace& trace, Projection p);

std::string projection_name(Projection p);
Projection projection_from_name(const std::string& name);

// Fixed-capacity memory visible to the adversary only through its trace.
// Contents model encrypted cells: read/write append (kind, address) and
// nothing else. Construction and peek/poke are the untraced channel for
// preparing inputs and for test oracles.
template <typename T>
class TracedStore {
 public:
  explicit TracedStore(std::size_t capacity) : cells_(capacity) {}
  explicit TracedStore(std::vector<T> initial) : cells_(std::move(initial)) {}

  std::size_t capacity() const { return cells_.size(); }

  T read(std::size_t addr) {
    check(addr);
    trace_.append(AccessKind::Read, addr);
    return cells_[addr];
  }

  void write(std::size_t addr, T value) {
    check(addr);
    trace_.append(AccessKind::Write, addr);
    cells_[addr] = std::move(value);
  }

  const T& peek(std::size_t addr) const {
    check(addr);
    return cells_[addr];
  }

  void poke(std::size_t addr, T value) {
    check(addr);
    cells_[addr] = std::move(value);
  }

  const std::vector<T>& cells() const { return cells_; }

  AccessTrace& trace() { return trace_; }
  const AccessTrace& trace() const { return trace_; }

 private:
  void check(std::size_t addr) const {
    if (addr >= cells_.size()) throw std::out_of_range("TracedStore: address out of bounds");
  }

  std::vector<T> cells_;
  AccessTrace trace_;
};

}  // namespace oblab
