#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "petra/core_types.hpp"

namespace petra {

// Raised when the settlement algebra is asked to do something impossible:
// same-sign inputs, disjoint windows at settle time, escrow shortfall,
// arithmetic overflow. Callers in the contract turn these into transaction
// failures.
class ExchangeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// The tradable overlap of two opposite-sign assets: the window common to
// both and the power both can sustain there.
struct Overlap {
    Timestep start = 0;
    Timestep end = 0;
    std::uint64_t matched_power = 0;  // min(|a.power|, |b.power|)

    std::uint64_t length() const { return end - start + 1; }
};

// Overlap window [max(starts), min(ends)] and matched power, or nullopt when
// the windows are disjoint. Throws ExchangeError on same-sign inputs.
std::optional<Overlap> intersect(const EnergyAsset& a, const EnergyAsset& b);

struct SplitResult {
    EnergyAsset matched;
    // Pre-window slice, post-window slice, in-window power residue, in that
    // order; empty or zero-power pieces are omitted.
    std::vector<EnergyAsset> remainders;
};

// Cuts `matched_power` watts over [window_start, window_end] out of the
// asset. The outputs partition the input: their per-timestep power sums
// reproduce it exactly.
SplitResult split(const EnergyAsset& asset, Timestep window_start, Timestep window_end,
                  std::uint64_t matched_power);

// Outcome of exchanging the intersecting parts of an offered and a provided
// asset. Matched pieces swap sides (each party receives the counterparty's
// piece); remainders return to their original owners.
struct Settlement {
    std::optional<EnergyAsset> matched_to_acceptor;  // cut from the offered asset
    std::optional<EnergyAsset> matched_to_poster;    // cut from the provided asset
    std::vector<EnergyAsset> remainders_to_poster;
    std::vector<EnergyAsset> remainders_to_acceptor;
    FinancialBalance payment_to_seller;
    FinancialBalance refund_to_buyer;
};

// Settles a trade at `unit_price` fiat minor units per watt-interval.
//   payment_to_seller = unit_price * matched_power * window_length
//   refund_to_buyer   = escrow - payment_to_seller
// Throws ExchangeError on disjoint windows, same-sign inputs, escrow
// shortfall, or overflow; no partial result escapes in that case.
Settlement settle(const EnergyAsset& offered, const EnergyAsset& provided,
                  std::uint64_t unit_price, FinancialBalance escrow);

}  // namespace petra
