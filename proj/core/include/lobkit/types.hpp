#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lobkit {

// Prices are integers in units of 1e-4 dollars end to end; floats only
// appear in features and returns.
using Price = std::int64_t;
using Qty = std::int64_t;
using OrderId = std::int64_t;
using TimeNs = std::int64_t;  // nanoseconds after midnight

inline constexpr Price kAskSentinel = 9999999999LL;
inline constexpr Price kBidSentinel = -9999999999LL;
inline constexpr TimeNs kNsPerSec = 1'000'000'000LL;

enum class Side : std::uint8_t { Bid = 0, Ask = 1 };

inline Side other(Side s) { return s == Side::Bid ? Side::Ask : Side::Bid; }

// LOBSTER event types.
enum class EventType : std::uint8_t {
  Submit = 1,
  PartialCancel = 2,
  Delete = 3,
  ExecuteVisible = 4,
  ExecuteHidden = 5,
  Cross = 6,
  Halt = 7,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lobkit
