#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lobkit/types.hpp"

namespace lobkit::ingest {

struct MessageRecord {
  TimeNs time = 0;  // nanoseconds after midnight
  EventType type = EventType::Submit;
  OrderId order_id = 0;
  Qty size = 0;
  Price price = 0;
  int direction = 0;  // +1 buy side, -1 sell side

  double time_seconds() const { return static_cast<double>(time) / 1e9; }
};

struct SnapshotLevel {
  Price price = 0;
  Qty size = 0;
  bool present = false;
};

// One row of the orderbook file: L levels per side. Sentinel prices mark
// absent levels (LOBSTER emits placeholders beyond available depth).
struct SnapshotRecord {
  std::vector<SnapshotLevel> asks;  // level 1..L, strictly ascending prices
  std::vector<SnapshotLevel> bids;  // level 1..L, strictly descending prices

  int levels() const { return static_cast<int>(asks.size()); }
  bool best_present() const { return !asks.empty() && asks[0].present && bids[0].present; }
  bool crossed() const {
    return best_present() && bids[0].price >= asks[0].price;
  }
};

struct ParsedSession {
  std::vector<MessageRecord> messages;
  std::vector<SnapshotRecord> snapshots;
};

// Parse LOBSTER message/orderbook CSV pair. Prices stay integral (1e-4
// dollar units); timestamps are parsed to integer nanoseconds so that
// equal-timestamp collapsing is exact. Throws Error with the offending line
// number on malformed rows or a row-count mismatch.
ParsedSession parse_session(const std::string& message_path,
                            const std::string& snapshot_path, int levels);

// In-memory variants used by the synthetic generator and tests.
std::vector<MessageRecord> parse_messages_csv(const std::string& text);
std::vector<SnapshotRecord> parse_snapshots_csv(const std::string& text, int levels);

struct SessionTimes {
  TimeNs open = 34200 * kNsPerSec;   // 09:30:00
  TimeNs close = 57600 * kNsPerSec;  // 16:00:00
};

// Half-open [start, end) range of excluded wall-clock time, e.g. around a
// trading halt. Keyed externally by (ticker, date); here just the range.
struct ExclusionRange {
  TimeNs start = 0;
  TimeNs end = 0;
};

// One retained state on the order book clock: the collapse of every message
// sharing a timestamp, paired with the snapshot after the last of them.
struct CleanEntry {
  std::int64_t clock_index = 0;   // 0..n-1, consecutive
  TimeNs time = 0;                // shared timestamp of the group
  std::size_t first_message = 0;  // range [first_message, last_message] in
  std::size_t last_message = 0;   // the raw message vector
  SnapshotRecord snapshot;
  int segment = 0;  // contiguous-replay segment; gaps advance it
};

struct CleanSession {
  std::string ticker;
  std::string date;
  std::vector<MessageRecord> messages;  // raw stream, file order
  std::vector<CleanEntry> entries;
  SessionTimes times;
  std::vector<ExclusionRange> exclusions;
  bool empty_after_cleaning = false;
  std::size_t dropped_crossed = 0;
  std::size_t dropped_out_of_hours = 0;
  std::size_t dropped_excluded = 0;
  std::size_t collapsed_groups = 0;  // groups with more than one message
};

// Apply the cleaning pipeline: same-timestamp runs collapse onto their last
// state, crossed-quote states are dropped, the first and last 10 minutes are
// dropped, configured exclusion ranges are dropped. Messages survive inside
// `messages` so that replay can keep the book synchronized across dropped
// spans; dropped spans advance the segment id so no feature window straddles
// them.
CleanSession clean_session(std::vector<MessageRecord> messages,
                           std::vector<SnapshotRecord> snapshots,
                           const SessionTimes& times,
                           const std::vector<ExclusionRange>& exclusions);

inline constexpr TimeNs kEdgeTrim = 600 * kNsPerSec;  // 10 minutes

}  // namespace lobkit::ingest
