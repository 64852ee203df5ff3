#include "lobkit/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

namespace lobkit::ingest {

namespace {

struct FieldCursor {
  const char* p;
  const char* end;
  std::size_t line;

  std::string_view next() {
    if (p > end) throw Error("line " + std::to_string(line) + ": missing field");
    const char* start = p;
    while (p < end && *p != ',') ++p;
    std::string_view f(start, static_cast<std::size_t>(p - start));
    ++p;  // past comma (or one past end)
    return f;
  }
  bool exhausted() const { return p > end; }
};

std::int64_t parse_int(std::string_view f, std::size_t line) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || ptr != f.data() + f.size())
    throw Error("line " + std::to_string(line) + ": bad integer field '" + std::string(f) + "'");
  return v;
}

// "34200.000000001" -> integer nanoseconds. Kept exact so that the
// same-timestamp collapse rule is a precise integer comparison.
TimeNs parse_time_ns(std::string_view f, std::size_t line) {
  auto dot = f.find('.');
  std::string_view sec_part = f.substr(0, dot);
  std::int64_t secs = parse_int(sec_part, line);
  std::int64_t nanos = 0;
  if (dot != std::string_view::npos) {
    std::string_view frac = f.substr(dot + 1);
    if (frac.size() > 9) frac = frac.substr(0, 9);
    std::int64_t scale = 1;
    for (std::size_t i = frac.size(); i < 9; ++i) scale *= 10;
    nanos = parse_int(frac, line) * scale;
  }
  return secs * kNsPerSec + nanos;
}

MessageRecord parse_message_row(std::string_view row, std::size_t line) {
  FieldCursor c{row.data(), row.data() + row.size(), line};
  MessageRecord m;
  m.time = parse_time_ns(c.next(), line);
  std::int64_t type = parse_int(c.next(), line);
  if (type < 1 || type > 7)
    throw Error("line " + std::to_string(line) + ": event type " + std::to_string(type) +
                " out of range 1..7");
  m.type = static_cast<EventType>(type);
  m.order_id = parse_int(c.next(), line);
  m.size = parse_int(c.next(), line);
  if (m.size < 0) throw Error("line " + std::to_string(line) + ": negative size");
  m.price = parse_int(c.next(), line);
  m.direction = static_cast<int>(parse_int(c.next(), line));
  if (type <= 5 && m.direction != 1 && m.direction != -1)
    throw Error("line " + std::to_string(line) + ": direction must be +1 or -1");
  return m;
}

SnapshotRecord parse_snapshot_row(std::string_view row, int levels, std::size_t line) {
  FieldCursor c{row.data(), row.data() + row.size(), line};
  SnapshotRecord s;
  s.asks.resize(levels);
  s.bids.resize(levels);
  for (int l = 0; l < levels; ++l) {
    Price ap = parse_int(c.next(), line);
    Qty av = parse_int(c.next(), line);
    Price bp = parse_int(c.next(), line);
    Qty bv = parse_int(c.next(), line);
    if (ap >= kAskSentinel || av == 0) {
      s.asks[l] = {0, 0, false};
    } else {
      s.asks[l] = {ap, av, true};
    }
    if (bp <= kBidSentinel || bv == 0) {
      s.bids[l] = {0, 0, false};
    } else {
      s.bids[l] = {bp, bv, true};
    }
  }
  if (!c.exhausted())
    throw Error("line " + std::to_string(line) + ": expected " + std::to_string(4 * levels) +
                " columns in snapshot row");
  Price last_ask = 0, last_bid = 0;
  bool have_ask = false, have_bid = false;
  for (int l = 0; l < levels; ++l) {
    if (s.asks[l].present) {
      if (have_ask && s.asks[l].price <= last_ask)
        throw Error("line " + std::to_string(line) + ": ask prices not strictly increasing");
      last_ask = s.asks[l].price;
      have_ask = true;
    }
    if (s.bids[l].present) {
      if (have_bid && s.bids[l].price >= last_bid)
        throw Error("line " + std::to_string(line) + ": bid prices not strictly decreasing");
      last_bid = s.bids[l].price;
      have_bid = true;
    }
  }
  return s;
}

// Strips a trailing '\r' (LOBSTER files are frequently CRLF).
std::string_view trim_row(std::string_view row) {
  if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
  return row;
}

template <typename RowFn>
void for_each_row(const std::string& text, RowFn&& fn) {
  std::size_t pos = 0, line = 1;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string_view row = trim_row(std::string_view(text).substr(pos, nl - pos));
    if (!row.empty()) fn(row, line);
    pos = nl + 1;
    ++line;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<MessageRecord> parse_messages_csv(const std::string& text) {
  std::vector<MessageRecord> out;
  for_each_row(text, [&](std::string_view row, std::size_t line) {
    out.push_back(parse_message_row(row, line));
  });
  return out;
}

std::vector<SnapshotRecord> parse_snapshots_csv(const std::string& text, int levels) {
  std::vector<SnapshotRecord> out;
  for_each_row(text, [&](std::string_view row, std::size_t line) {
    out.push_back(parse_snapshot_row(row, levels, line));
  });
  return out;
}

ParsedSession parse_session(const std::string& message_path, const std::string& snapshot_path,
                            int levels) {
  ParsedSession s;
  s.messages = parse_messages_csv(slurp(message_path));
  s.snapshots = parse_snapshots_csv(slurp(snapshot_path), levels);
  if (s.messages.size() != s.snapshots.size())
    throw Error("row-count mismatch: " + std::to_string(s.messages.size()) + " messages vs " +
                std::to_string(s.snapshots.size()) + " snapshots");
  return s;
}

CleanSession clean_session(std::vector<MessageRecord> messages,
                           std::vector<SnapshotRecord> snapshots, const SessionTimes& times,
                           const std::vector<ExclusionRange>& exclusions) {
  if (messages.size() != snapshots.size())
    throw Error("clean_session: inputs not aligned row-for-row");

  CleanSession out;
  out.times = times;
  out.exclusions = exclusions;

  for (std::size_t i = 1; i < messages.size(); ++i) {
    if (messages[i].time < messages[i - 1].time)
      throw Error("non-monotone timestamp at row " + std::to_string(i + 1));
  }

  const TimeNs lo = times.open + kEdgeTrim;
  const TimeNs hi = times.close - kEdgeTrim;
  auto excluded = [&](TimeNs t) {
    for (const auto& r : exclusions)
      if (t >= r.start && t < r.end) return true;
    return false;
  };

  std::int64_t clock = 0;
  int segment = 0;
  bool pending_gap = false;

  std::size_t i = 0;
  while (i < messages.size()) {
    std::size_t j = i;
    while (j + 1 < messages.size() && messages[j + 1].time == messages[i].time) ++j;
    const TimeNs t = messages[i].time;
    const SnapshotRecord& snap = snapshots[j];

    if (t < lo || t > hi) {
      ++out.dropped_out_of_hours;
      pending_gap = true;
    } else if (excluded(t)) {
      ++out.dropped_excluded;
      pending_gap = true;
    } else if (snap.crossed()) {
      // Transient crossed state (e.g. mid-sweep); removed from the clock but
      // does not break replay contiguity.
      ++out.dropped_crossed;
    } else {
      if (pending_gap && clock > 0) ++segment;
      pending_gap = false;
      CleanEntry e;
      e.clock_index = clock++;
      e.time = t;
      e.first_message = i;
      e.last_message = j;
      e.snapshot = snap;
      e.segment = segment;
      out.entries.push_back(std::move(e));
      if (j > i) ++out.collapsed_groups;
    }
    i = j + 1;
  }

  out.messages = std::move(messages);
  out.empty_after_cleaning = out.entries.empty() && !out.messages.empty();
  return out;
}

}  // namespace lobkit::ingest
