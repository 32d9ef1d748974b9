#include "petra/dso.hpp"

#include <limits>
#include <stdexcept>

namespace petra {

namespace {

constexpr std::uint64_t kWattSecondsPerKwh = 3'600'000;

std::uint64_t counter_at(const std::map<Timestep, std::uint64_t>& counters, Timestep t) {
    const auto it = counters.find(t);
    return it == counters.end() ? 0 : it->second;
}

// Release-on-deposit: subtract up to |power| from the counter, never below
// zero. Energy bought from others finds a zero counter and is a no-op.
void release(std::map<Timestep, std::uint64_t>& counters, const EnergyAsset& asset) {
    const std::uint64_t magnitude = abs_power(asset.power);
    for (Timestep t = asset.start; t <= asset.end; ++t) {
        const auto it = counters.find(t);
        if (it == counters.end()) {
            continue;
        }
        it->second -= std::min(it->second, magnitude);
        if (it->second == 0) {
            counters.erase(it);
        }
    }
}

}  // namespace

void SafetyPolicy::validate() const {
    if (max_withdraw_power < 1 || max_outstanding_fiat < 1 || horizon_limit < 1) {
        throw std::invalid_argument("SafetyPolicy: all limits must be positive");
    }
}

Dso::Dso(SafetyPolicy policy, AnonAddress address, Ledger& ledger)
    : policy_(policy), address_(address), ledger_(ledger) {
    policy_.validate();
}

void Dso::add_prosumer(ProsumerId id, FinancialBalance initial_fiat) {
    const auto [it, inserted] = accounts_.try_emplace(id.value);
    if (!inserted) {
        throw std::invalid_argument("Dso: prosumer already registered");
    }
    it->second.prosumer = id;
    it->second.fiat = initial_fiat;
}

const ProsumerAccount& Dso::account(ProsumerId id) const {
    const auto it = accounts_.find(id.value);
    if (it == accounts_.end()) {
        throw std::out_of_range("Dso: unknown prosumer");
    }
    return it->second;
}

std::optional<ProsumerId> Dso::prosumer_of(const AnonAddress& addr) const {
    const auto it = address_map_.find(addr);
    if (it == address_map_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<std::string> Dso::handle_withdraw(ProsumerId prosumer, const AnonAddress& to,
                                                const std::vector<EnergyAsset>& assets,
                                                std::uint64_t fiat) {
    const auto acct_it = accounts_.find(prosumer.value);
    if (acct_it == accounts_.end()) {
        throw std::invalid_argument("Dso: withdrawal from unknown prosumer");
    }
    ProsumerAccount& acct = acct_it->second;

    if (const auto owner = prosumer_of(to); owner && *owner != prosumer) {
        // Two prosumers presenting the same address would break the book's
        // disjointness; the address generator makes this unreachable.
        throw std::runtime_error("Dso: anonymous address already issued to another prosumer");
    }

    // Validation pass over the whole request; nothing is committed until all
    // checks have passed.
    std::map<Timestep, std::uint64_t> added_production;
    std::map<Timestep, std::uint64_t> added_consumption;
    for (const EnergyAsset& asset : assets) {
        if (!asset.is_valid()) {
            return "invalid energy asset in withdrawal";
        }
        if (asset.end > policy_.horizon_limit) {
            return "withdrawal horizon exceeded (timestep " + std::to_string(asset.end) + " > " +
                   std::to_string(policy_.horizon_limit) + ")";
        }
        auto& added = asset.is_production() ? added_production : added_consumption;
        const std::uint64_t magnitude = abs_power(asset.power);
        for (Timestep t = asset.start; t <= asset.end; ++t) {
            const auto sum = checked_add(counter_at(added, t), magnitude);
            if (!sum) {
                return "power cap exceeded at timestep " + std::to_string(t);
            }
            added[t] = *sum;
        }
    }
    for (const auto* side : {&added_production, &added_consumption}) {
        const bool production = side == &added_production;
        const auto& outstanding = production ? acct.outstanding_production : acct.outstanding_consumption;
        for (const auto& [t, watts] : *side) {
            const auto total = checked_add(counter_at(outstanding, t), watts);
            if (!total || *total > policy_.max_withdraw_power) {
                return std::string(production ? "production" : "consumption") +
                       " cap exceeded at timestep " + std::to_string(t) + " (" +
                       (total ? std::to_string(*total) : "overflow") + " > " +
                       std::to_string(policy_.max_withdraw_power) + ")";
            }
        }
    }
    if (fiat > acct.fiat.amount) {
        return "insufficient funds (" + std::to_string(fiat) + " > " +
               std::to_string(acct.fiat.amount) + ")";
    }
    const auto outstanding_fiat = checked_add(acct.outstanding_fiat, fiat);
    if (!outstanding_fiat || *outstanding_fiat > policy_.max_outstanding_fiat) {
        return "outstanding fiat cap exceeded (" +
               (outstanding_fiat ? std::to_string(*outstanding_fiat) : "overflow") + " > " +
               std::to_string(policy_.max_outstanding_fiat) + ")";
    }

    // Commit.
    for (const auto& [t, watts] : added_production) {
        acct.outstanding_production[t] = counter_at(acct.outstanding_production, t) + watts;
    }
    for (const auto& [t, watts] : added_consumption) {
        acct.outstanding_consumption[t] = counter_at(acct.outstanding_consumption, t) + watts;
    }
    acct.fiat = FinancialBalance{acct.fiat.amount - fiat};
    acct.outstanding_fiat = *outstanding_fiat;
    acct.address_book.insert(to);
    address_map_.emplace(to, prosumer);

    for (const EnergyAsset& asset : assets) {
        const SubmitResult result = ledger_.submit(
            LedgerTransaction{Authorization{address_}, next_nonce_++, AddEnergyAsset{to, asset}});
        if (!result.accepted) {
            throw std::logic_error("Dso: add transaction rejected: " + result.reason);
        }
    }
    if (fiat > 0) {
        const SubmitResult result = ledger_.submit(
            LedgerTransaction{Authorization{address_}, next_nonce_++, AddFinancialBalance{to, fiat}});
        if (!result.accepted) {
            throw std::logic_error("Dso: add transaction rejected: " + result.reason);
        }
    }
    return std::nullopt;
}

void Dso::handle_deposit_event(const LedgerEvent& event) {
    if (const auto* asset_deposit = std::get_if<AssetDeposited>(&event)) {
        const auto owner = prosumer_of(asset_deposit->owner);
        if (!owner) {
            throw std::runtime_error("Dso: asset deposit from unknown anonymous address " +
                                     asset_deposit->owner.hex());
        }
        ProsumerAccount& acct = accounts_.at(owner->value);
        const EnergyAsset& asset = asset_deposit->asset;
        for (Timestep t = asset.start; t <= asset.end; ++t) {
            const auto updated = static_cast<__int128>(acct.schedule[t]) + asset.power;
            if (updated > std::numeric_limits<std::int64_t>::max() ||
                updated < std::numeric_limits<std::int64_t>::min()) {
                throw std::overflow_error("Dso: delivery schedule overflow");
            }
            acct.schedule[t] = static_cast<std::int64_t>(updated);
        }
        release(asset.is_production() ? acct.outstanding_production : acct.outstanding_consumption,
                asset);
        return;
    }
    if (const auto* fiat_deposit = std::get_if<FinancialDeposited>(&event)) {
        const auto owner = prosumer_of(fiat_deposit->owner);
        if (!owner) {
            throw std::runtime_error("Dso: financial deposit from unknown anonymous address " +
                                     fiat_deposit->owner.hex());
        }
        ProsumerAccount& acct = accounts_.at(owner->value);
        const auto credited = checked_add(acct.fiat.amount, fiat_deposit->amount);
        if (!credited) {
            throw std::overflow_error("Dso: account fiat overflow on deposit");
        }
        acct.fiat = FinancialBalance{*credited};
        acct.outstanding_fiat -= std::min(acct.outstanding_fiat, fiat_deposit->amount);
        return;
    }
    throw std::logic_error("Dso: handle_deposit_event expects a deposit event");
}

void Dso::step(Bus& bus, const std::vector<LedgerEvent>& events) {
    // Deposits first: released counters free capacity for this step's
    // withdrawal requests.
    for (const LedgerEvent& event : events) {
        if (std::holds_alternative<AssetDeposited>(event) ||
            std::holds_alternative<FinancialDeposited>(event)) {
            handle_deposit_event(event);
        }
    }
    for (BusMessage& message : bus.poll(kDsoEndpoint)) {
        const auto* request = std::get_if<WithdrawAssets>(&message.payload);
        if (request == nullptr) {
            throw std::logic_error("Dso: unexpected bus message kind");
        }
        if (message.sender < 0) {
            throw std::logic_error("Dso: withdrawal request not attributed to a prosumer");
        }
        const ProsumerId prosumer{static_cast<std::uint32_t>(message.sender)};
        const auto failure = handle_withdraw(prosumer, request->to, request->assets, request->fiat);
        if (failure) {
            bus.send(BusMessage{kDsoEndpoint, message.sender,
                                FailedWithdrawal{request->to, *failure}});
        }
    }
}

std::uint64_t Dso::unit_price_from_kwh(std::uint64_t price_per_kwh, const TimeConfig& time) {
    time.validate();
    const auto scaled = checked_mul(price_per_kwh, time.interval_seconds);
    if (!scaled) {
        throw std::overflow_error("unit_price_from_kwh: conversion overflow");
    }
    const auto rounded = checked_add(*scaled, kWattSecondsPerKwh / 2);
    if (!rounded) {
        throw std::overflow_error("unit_price_from_kwh: conversion overflow");
    }
    return *rounded / kWattSecondsPerKwh;
}

}  // namespace petra
