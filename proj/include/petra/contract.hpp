#pragma once

#include <map>
#include <string>
#include <vector>

#include "petra/chain_types.hpp"
#include "petra/core_types.hpp"

namespace petra {

enum class OfferKind { Ask, Bid };
enum class OfferStatus { Open, Accepted, Rescinded };

struct Offer {
    OfferId offer_id = 0;
    AssetId asset_id = 0;          // the locked energy asset
    std::uint64_t unit_price = 0;  // fiat minor units per watt-interval
    AnonAddress poster;
    OfferKind kind = OfferKind::Ask;  // derived from the asset's sign
    FinancialBalance escrow;          // bids only: unit_price * energy(asset)
    OfferStatus status = OfferStatus::Open;
};

struct AssetRecord {
    EnergyAsset asset;
    AnonAddress owner;
    bool locked = false;  // locked assets are referenced by exactly one open offer
};

// Outcome of applying one transaction. A failed transaction is data, not an
// exception: state is untouched and the reason is recorded.
struct ApplyResult {
    bool ok = false;
    std::string reason;
    std::vector<LedgerEvent> events;
};

// Audit trail entry for one executed trade.
struct SettlementRecord {
    OfferId offer_id = 0;
    AssetId offered_asset_id = 0;
    AssetId provided_asset_id = 0;
    Timestep window_start = 0;
    Timestep window_end = 0;
    std::uint64_t matched_power = 0;
    std::uint64_t unit_price = 0;
    std::uint64_t payment = 0;
    AnonAddress seller;
    AnonAddress buyer;
};

// The market smart contract as an explicit state machine: per-address asset
// custody, offer lifecycle and partial-fill settlement. Mutated only through
// apply(); every successful call emits exactly one event.
class Contract {
  public:
    explicit Contract(AnonAddress dso_address) : dso_address_(dso_address) {}

    ApplyResult apply(const LedgerTransaction& tx);

    const AnonAddress& dso_address() const { return dso_address_; }
    const std::map<AssetId, AssetRecord>& energy_assets() const { return energy_assets_; }
    const std::map<AnonAddress, FinancialBalance>& balances() const { return balances_; }
    const std::map<OfferId, Offer>& offers() const { return offers_; }
    AssetId next_asset_id() const { return next_asset_id_; }
    OfferId next_offer_id() const { return next_offer_id_; }

    FinancialBalance balance_of(const AnonAddress& addr) const;
    // Assets owned by `addr`, ascending by id.
    std::vector<std::pair<AssetId, AssetRecord>> assets_owned_by(const AnonAddress& addr) const;
    // Open offers, ascending by id (post order).
    std::vector<Offer> open_offers() const;

    std::uint64_t trade_count() const { return trade_count_; }
    std::uint64_t matched_energy() const { return matched_energy_; }
    const std::vector<SettlementRecord>& settlements() const { return settlements_; }

  private:
    ApplyResult add_energy_asset(const Authorization& auth, const AddEnergyAsset& call);
    ApplyResult add_financial_balance(const Authorization& auth, const AddFinancialBalance& call);
    ApplyResult post_offer(const Authorization& auth, const PostOffer& call);
    ApplyResult rescind_offer(const Authorization& auth, const RescindOffer& call);
    ApplyResult accept_offer(const Authorization& auth, const AcceptOffer& call);
    ApplyResult deposit_energy_asset(const Authorization& auth, const DepositEnergyAsset& call);
    ApplyResult deposit_financial(const Authorization& auth, const DepositFinancial& call);

    AssetId mint_asset(const EnergyAsset& asset, const AnonAddress& owner);

    AnonAddress dso_address_;
    std::map<AssetId, AssetRecord> energy_assets_;
    std::map<AnonAddress, FinancialBalance> balances_;
    std::map<OfferId, Offer> offers_;
    AssetId next_asset_id_ = 0;
    OfferId next_offer_id_ = 0;

    // Trade accounting; counters are part of the hashed state, the
    // settlement log is derived audit data.
    std::uint64_t trade_count_ = 0;
    std::uint64_t matched_energy_ = 0;  // watt-intervals
    std::vector<SettlementRecord> settlements_;
};

}  // namespace petra
