#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lobkit/ingest.hpp"
#include "lobkit/types.hpp"

namespace lobkit::book {

// Tick grid T = {k * tick}; prices are validated to sit on it.
struct TickGrid {
  Price tick = 100;  // 100 units = $0.01

  bool on_grid(Price p) const { return p % tick == 0; }
};

struct QueueOrder {
  OrderId id = 0;
  Qty size = 0;
};

// Synthetic ids mark liquidity aggregated from a snapshot (session start or
// price re-entry into the tracked range); they are strictly negative.
inline constexpr OrderId kSyntheticId = -1;

using Queue = std::deque<QueueOrder>;

struct LevelView {
  Price price = 0;
  Qty volume = 0;
};

// Full L3 book: price -> FIFO queue per side, plus an order index for O(1)
// cancel/execute lookup. Single writer; read-only views may be shared after
// an event is fully applied.
class BookState {
 public:
  explicit BookState(TickGrid grid = TickGrid{}) : grid_(grid) {}

  const TickGrid& grid() const { return grid_; }

  // Initialize from a snapshot: every present level becomes one aggregated
  // synthetic order (the session-start generalization of the re-entry rule).
  static BookState from_snapshot(const ingest::SnapshotRecord& snap, TickGrid grid);

  bool empty(Side s) const { return side(s).empty(); }
  std::optional<Price> best_price(Side s) const;
  Qty volume_at(Side s, Price p) const;
  const Queue* queue_at(Side s, Price p) const;

  // First `levels` occupied levels, best first.
  std::vector<LevelView> levels(Side s, int levels) const;

  // Mid-price in doubled units (p_bid + p_ask) so that half-ticks stay
  // integral. Requires both sides non-empty.
  Price mid2() const;

  bool halted() const { return halted_; }

  std::size_t total_orders() const { return order_index_.size(); }

  // Event application; see apply_event below.
  void submit(OrderId id, Side s, Price p, Qty size);
  void reduce(OrderId id, Qty by, bool remove_if_zero);
  void erase_order(OrderId id);

  // Drop liquidity strictly deeper than `boundary` on side s (outside the
  // tracked L-level range).
  void prune_deeper_than(Side s, Price boundary);

  // Insert an aggregated synthetic queue at a price (re-entry rule).
  void set_aggregated(Side s, Price p, Qty volume);

  bool has_order(OrderId id) const { return order_index_.count(id) != 0; }

  void set_halted(bool h) { halted_ = h; }

  const std::map<Price, Queue, std::greater<Price>>& bids() const { return bids_; }
  const std::map<Price, Queue, std::less<Price>>& asks() const { return asks_; }

 private:
  template <typename M>
  const M& side_map(const M& m) const { return m; }
  struct SideRef;

  const std::map<Price, Queue, std::greater<Price>>& bids_map() const { return bids_; }

  // Type-erased access helpers; bids and asks need different comparators.
  class AnySide;
  AnySide any_side(Side s);

  template <typename Fn>
  auto with_side(Side s, Fn&& fn) const;

  std::map<Price, Queue, std::greater<Price>> bids_;
  std::map<Price, Queue, std::less<Price>> asks_;
  struct OrderLoc {
    Side side;
    Price price;
  };
  std::unordered_map<OrderId, OrderLoc> order_index_;
  TickGrid grid_;
  bool halted_ = false;
  std::int64_t synth_counter_ = 0;

  const void* side_ptr(Side s) const { return s == Side::Bid ? (const void*)&bids_ : (const void*)&asks_; }
  template <typename M>
  static std::vector<LevelView> levels_of(const M& m, int levels);

 public:
  // Exposed for features: iterate occupied (price, volume) from the best
  // level outward, up to `count` levels.
  template <typename Fn>
  void for_each_level(Side s, int count, Fn&& fn) const {
    int n = 0;
    if (s == Side::Bid) {
      for (const auto& [p, q] : bids_) {
        if (n++ >= count) break;
        Qty v = 0;
        for (const auto& o : q) v += o.size;
        fn(p, v, q);
      }
    } else {
      for (const auto& [p, q] : asks_) {
        if (n++ >= count) break;
        Qty v = 0;
        for (const auto& o : q) v += o.size;
        fn(p, v, q);
      }
    }
  }

 private:
  template <typename M>
  const Queue* find_queue(const M& m, Price p) const {
    auto it = m.find(p);
    return it == m.end() ? nullptr : &it->second;
  }
  const std::map<Price, Queue, std::greater<Price>>& side(Side) const;
};

struct ApplyStats {
  std::size_t out_of_range_events = 0;  // unknown id at an untracked price
  std::size_t synthetic_consumed = 0;   // unknown id consumed from an aggregate
  std::size_t reentries = 0;            // queues re-initialized from snapshots
};

// Apply one message to the book. Types 1-4 mutate per the LOBSTER rules,
// type 5 (hidden execution) leaves the visible book unchanged, types 6/7
// leave the book unchanged and mark the halt flag. Unknown order ids for
// types 2/3/4 are consumed from an aggregated synthetic order at that price
// when one exists (liquidity that predates tracking); at an untracked price
// they are recorded as out-of-range and resolved by the snapshot sync.
// Cancels or executions exceeding the remaining size throw (corrupt stream).
void apply_event(BookState& state, const ingest::MessageRecord& msg, ApplyStats* stats = nullptr);

// Align the tracked range with a snapshot: prune liquidity deeper than the
// snapshot's deepest visible level and initialize queues for prices that
// (re-)entered the visible range as single aggregated orders.
void sync_to_snapshot(BookState& state, const ingest::SnapshotRecord& snap, int levels,
                      ApplyStats* stats = nullptr);

// Relative tick grid around the mid: pi[0] is the tick nearest the mid on
// each side (equal to the mid when it lies on the grid), stepping outward by
// one tick. Throws on a one-sided book.
struct RelativeGrid {
  std::vector<Price> bid;  // descending
  std::vector<Price> ask;  // ascending
};
RelativeGrid relative_tick_grid(const BookState& state, int window);

struct LevelDiff {
  Side side;
  int level;
  Price book_price, snap_price;
  Qty book_volume, snap_volume;
};

struct ReconcileReport {
  bool match = true;
  std::vector<LevelDiff> diffs;
};

// Exact integer comparison of the book's derived L2 view against a snapshot
// over the first `levels` levels. Mismatch is a report, not an error.
ReconcileReport reconcile(const BookState& state, const ingest::SnapshotRecord& snap, int levels);

struct ReplayStats {
  std::size_t events = 0;
  std::size_t reconcile_mismatches = 0;
  std::int64_t first_mismatch_entry = -1;
  ApplyStats apply;
};

// Replay a cleaned session: initialize from the first entry's snapshot, then
// for each subsequent entry apply its message group, sync the tracked range
// and hand the post-event state to the visitor. With `check` set, every
// entry is reconciled against its snapshot.
ReplayStats replay_session(
    const ingest::CleanSession& session, TickGrid grid, int levels, bool check,
    const std::function<void(std::size_t entry_index, const BookState&)>& visit);

}  // namespace lobkit::book
