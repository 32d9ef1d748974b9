#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "petra/bus.hpp"
#include "petra/contract.hpp"
#include "petra/core_types.hpp"
#include "petra/ledger.hpp"

namespace petra {

// Per-timestep signed watts: positive is surplus production to sell,
// negative is a deficit to cover. Length equals the scenario horizon.
struct NetLoadForecast {
    std::vector<std::int64_t> watts;
};

struct AgentStrategy {
    std::uint64_t ask_price = 0;     // fiat per watt-interval asked when selling
    std::uint64_t bid_price = 0;     // ceiling paid when buying
    Timestep chunking = 1;           // maximum asset length in timesteps
    Timestep withdraw_lead = 3;      // timesteps before start to withdraw

    void validate() const;
};

// Maximal constant-power runs of the forecast, split at value changes and at
// the chunking length; zero runs are skipped. The per-timestep sum of the
// result reproduces the forecast.
std::vector<EnergyAsset> plan_assets(const NetLoadForecast& forecast, Timestep chunking);

// Prosumer trading agent. Withdraws upcoming planned assets to fresh
// anonymous addresses, accepts the oldest compatible open counter-offer it
// can afford (first come, first served), posts its own offers when no
// acceptable counter-offer exists, and deposits received pieces, stale
// assets and proceeds back to the DSO.
//
// Deterministic by construction: behavior depends only on the forecast, the
// strategy, the observed chain state and the shared address generator.
class Agent {
  public:
    Agent(ProsumerId id, NetLoadForecast forecast, AgentStrategy strategy,
          AddressGenerator& addresses);

    // One simulation step. Reads delivered events and the mined contract
    // state; emits bus messages and ledger transactions. Past the forecast
    // horizon the agent winds down: rescinds its open offers and deposits
    // everything it still owns.
    void step(Timestep now, const std::vector<LedgerEvent>& events, Bus& bus, Ledger& ledger,
              const Contract& contract);

    ProsumerId id() const { return id_; }
    Endpoint endpoint() const { return static_cast<Endpoint>(id_.value); }
    Timestep horizon() const { return static_cast<Timestep>(forecast_.watts.size()); }
    const AgentStrategy& strategy() const { return strategy_; }
    const std::vector<AnonAddress>& addresses() const { return address_order_; }
    bool owns_address(const AnonAddress& addr) const { return address_info_.count(addr) > 0; }
    const std::vector<std::string>& failed_withdrawals() const { return failed_withdrawals_; }
    const std::vector<EnergyAsset>& planned() const { return planned_assets_; }

  private:
    struct AddressInfo {
        bool production = false;  // sign of the asset withdrawn to this address
        std::uint64_t next_nonce = 0;
    };

    void ingest(const std::vector<LedgerEvent>& events, Bus& bus);
    void request_withdrawals(Timestep now, Bus& bus);
    void trade(Timestep now, Ledger& ledger, const Contract& contract);
    void wind_down(Ledger& ledger, const Contract& contract);
    void submit(Ledger& ledger, const AnonAddress& signer, ContractCall call);

    ProsumerId id_;
    NetLoadForecast forecast_;
    AgentStrategy strategy_;
    AddressGenerator& address_source_;

    std::vector<EnergyAsset> planned_assets_;
    std::vector<bool> requested_;  // parallel to planned_assets_

    std::vector<AnonAddress> address_order_;
    std::map<AnonAddress, AddressInfo> address_info_;
    std::set<OfferId> known_open_offers_;  // from OfferPosted/Rescinded/Accepted events
    std::vector<std::string> failed_withdrawals_;
};

}  // namespace petra
