#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "petra/bus.hpp"
#include "petra/chain_types.hpp"
#include "petra/core_types.hpp"
#include "petra/ledger.hpp"

namespace petra {

// Withdrawal limits enforced per prosumer. Production and consumption are
// capped separately, each per timestep.
struct SafetyPolicy {
    std::uint64_t max_withdraw_power = 1;   // watts per prosumer per timestep
    std::uint64_t max_outstanding_fiat = 1; // fiat on-chain per prosumer
    Timestep horizon_limit = 1;             // farthest withdrawable timestep

    void validate() const;
};

struct ProsumerAccount {
    ProsumerId prosumer;
    FinancialBalance fiat;
    std::uint64_t outstanding_fiat = 0;  // withdrawn to the chain, not yet deposited back
    // Watts currently on-chain per timestep, by sign of the withdrawn asset.
    std::map<Timestep, std::uint64_t> outstanding_production;
    std::map<Timestep, std::uint64_t> outstanding_consumption;
    std::set<AnonAddress> address_book;
    // Net delivery schedule credited from deposited assets, watts per timestep.
    std::map<Timestep, std::int64_t> schedule;
};

// Off-chain Distribution System Operator: prosumer accounts, the withdrawal
// safety gate, anonymous-address bookkeeping and deposit crediting. Not
// consulted during trading; it only acts on withdrawal requests and deposit
// events.
class Dso {
  public:
    Dso(SafetyPolicy policy, AnonAddress address, Ledger& ledger);

    void add_prosumer(ProsumerId id, FinancialBalance initial_fiat);

    // Processes one withdrawal request. On success the policy counters are
    // updated, the address is recorded in the prosumer's book, and the adds
    // are submitted to the ledger; returns nullopt. On failure returns the
    // reason and nothing changes.
    std::optional<std::string> handle_withdraw(ProsumerId prosumer, const AnonAddress& to,
                                               const std::vector<EnergyAsset>& assets,
                                               std::uint64_t fiat);

    // Credits a deposit to the owning prosumer's account and releases the
    // matching withdrawal counters. Throws on an unknown anonymous address:
    // that is a bookkeeping breach, not a recoverable condition.
    void handle_deposit_event(const LedgerEvent& event);

    // One simulation step: consume deposit events, then withdrawal requests
    // from the bus, answering failures with failedWithdrawal messages.
    void step(Bus& bus, const std::vector<LedgerEvent>& events);

    // Converts the market price per kWh into fiat minor units per
    // watt-interval, rounding half-up. Throws std::overflow_error if the
    // conversion leaves the 64-bit range.
    static std::uint64_t unit_price_from_kwh(std::uint64_t price_per_kwh, const TimeConfig& time);

    const SafetyPolicy& policy() const { return policy_; }
    const AnonAddress& address() const { return address_; }
    const std::map<std::uint32_t, ProsumerAccount>& accounts() const { return accounts_; }
    const ProsumerAccount& account(ProsumerId id) const;
    // The private prosumer <-> anonymous address map.
    const std::map<AnonAddress, ProsumerId>& address_map() const { return address_map_; }
    std::optional<ProsumerId> prosumer_of(const AnonAddress& addr) const;

  private:
    SafetyPolicy policy_;
    AnonAddress address_;
    Ledger& ledger_;
    std::uint64_t next_nonce_ = 0;
    std::map<std::uint32_t, ProsumerAccount> accounts_;
    std::map<AnonAddress, ProsumerId> address_map_;
};

}  // namespace petra
