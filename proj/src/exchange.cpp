#include "petra/exchange.hpp"

#include <algorithm>

namespace petra {

std::optional<Overlap> intersect(const EnergyAsset& a, const EnergyAsset& b) {
    a.validate();
    b.validate();
    if (a.is_production() == b.is_production()) {
        throw ExchangeError("intersect: assets have the same sign");
    }
    const Timestep start = std::max(a.start, b.start);
    const Timestep end = std::min(a.end, b.end);
    if (start > end) {
        return std::nullopt;
    }
    return Overlap{start, end, std::min(abs_power(a.power), abs_power(b.power))};
}

SplitResult split(const EnergyAsset& asset, Timestep window_start, Timestep window_end,
                  std::uint64_t matched_power) {
    asset.validate();
    if (window_start < asset.start || window_end > asset.end || window_start > window_end) {
        throw ExchangeError("split: window not contained in the asset interval");
    }
    const std::uint64_t magnitude = abs_power(asset.power);
    if (matched_power == 0 || matched_power > magnitude) {
        throw ExchangeError("split: matched power outside (0, |asset.power|]");
    }
    const bool production = asset.is_production();

    SplitResult result;
    result.matched = make_asset(signed_power(production, matched_power), window_start, window_end);
    if (window_start > asset.start) {
        result.remainders.push_back(make_asset(asset.power, asset.start, window_start - 1));
    }
    if (window_end < asset.end) {
        result.remainders.push_back(make_asset(asset.power, window_end + 1, asset.end));
    }
    if (matched_power < magnitude) {
        result.remainders.push_back(
            make_asset(signed_power(production, magnitude - matched_power), window_start, window_end));
    }
    return result;
}

Settlement settle(const EnergyAsset& offered, const EnergyAsset& provided,
                  std::uint64_t unit_price, FinancialBalance escrow) {
    const auto overlap = intersect(offered, provided);
    if (!overlap) {
        throw ExchangeError("settle: time windows are disjoint");
    }

    const auto per_interval = checked_mul(unit_price, overlap->matched_power);
    const auto payment = per_interval ? checked_mul(*per_interval, overlap->length()) : std::nullopt;
    if (!payment) {
        throw ExchangeError("settle: payment overflows the 64-bit range");
    }
    if (escrow.amount < *payment) {
        throw ExchangeError("settle: escrow does not cover the payment");
    }

    SplitResult offered_split = split(offered, overlap->start, overlap->end, overlap->matched_power);
    SplitResult provided_split = split(provided, overlap->start, overlap->end, overlap->matched_power);

    Settlement settlement;
    settlement.matched_to_acceptor = offered_split.matched;
    settlement.matched_to_poster = provided_split.matched;
    settlement.remainders_to_poster = std::move(offered_split.remainders);
    settlement.remainders_to_acceptor = std::move(provided_split.remainders);
    settlement.payment_to_seller = FinancialBalance{*payment};
    settlement.refund_to_buyer = FinancialBalance{escrow.amount - *payment};
    return settlement;
}

}  // namespace petra
