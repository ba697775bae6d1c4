#include "oblab/trace.hpp"

#include <algorithm>

namespace oblab {

std::size_t AccessTrace::read_count() const {
  return static_cast<std::size_t>(
      std::count_if(events_.begin(), events_.end(),
                    [](const AccessEvent& e) { return e.kind == AccessKind::Read; }));
}

std::size_t AccessTrace::write_count() const { return events_.size() - read_count(); }

std::string AccessTrace::to_csv() const {
  std::string out;
  out.reserve(events_.size() * 12);
  for (const auto& e : events_) {
    out += std::to_string(e.step);
    out += e.kind == AccessKind::Read ? ",R," : ",W,";
    out += std::to_string(e.address);
    out += '\n';
  }
  return out;
}

namespace {

// Segments the address sequence into maximal non-decreasing runs and emits
// each run's (first, last) address. For the noisy search every probing pass
// sweeps upward, so this recovers one (min, max) pair per pass plus one for
// the final scan.
TokenSeq interval_summary(const std::vector<AccessEvent>& events) {
  TokenSeq out;
  std::size_t i = 0;
  const std::size_t n = events.size();
  while (i < n) {
    std::size_t last = i;
    while (last + 1 < n && events[last + 1].address >= events[last].address) ++last;
    out.push_back(events[i].address);
    out.push_back(events[last].address);
    i = last + 1;
  }
  return out;
}

}  // namespace

TokenSeq project_trace(const AccessTrace& trace, Projection p) {
  const auto& ev = trace.events();
  TokenSeq out;
  switch (p) {
    case Projection::Full:
      out.reserve(ev.size());
      for (const auto& e : ev)
        out.push_back(e.address * 2 + static_cast<std::uint64_t>(e.kind));
      return out;
    case Projection::AddressesOnly:
      out.reserve(ev.size());
      for (const auto& e : ev) out.push_back(e.address);
      return out;
    case Projection::LengthOnly:
      out.push_back(ev.size());
      return out;
    case Projection::IntervalSummary:
      return interval_summary(ev);
  }
  throw std::invalid_argument("project_trace: unknown projection");
}

std::string projection_name(Projection p) {
  switch (p) {
    case Projection::Full: return "full";
    case Projection::AddressesOnly: return "addresses";
    case Projection::LengthOnly: return "length";
    case Projection::IntervalSummary: return "intervals";
  }
  return "unknown";
}

Projection projection_from_name(const std::string& name) {
  if (name == "full") return Projection::Full;
  if (name == "addresses") return Projection::AddressesOnly;
  if (name == "length") return Projection::LengthOnly;
  if (name == "intervals") return Projection::IntervalSummary;
  throw std::invalid_argument("unknown projection: " + name);
}

}  // namespace oblab
