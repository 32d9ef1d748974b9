#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "petra/core_types.hpp"

namespace petra {

using AssetId = std::uint64_t;
using OfferId = std::uint64_t;

// --- Contract calls -------------------------------------------------------
// The transaction payloads of the trading workflow. Adds are DSO-only; the
// rest are signed by the anonymous address that owns the referenced asset,
// offer, or balance.

struct AddEnergyAsset {
    AnonAddress owner;
    EnergyAsset asset;
};

struct AddFinancialBalance {
    AnonAddress owner;
    std::uint64_t amount = 0;
};

struct PostOffer {
    AssetId asset_id = 0;
    std::uint64_t unit_price = 0;  // fiat minor units per watt-interval
};

struct RescindOffer {
    OfferId offer_id = 0;
};

struct AcceptOffer {
    OfferId offer_id = 0;
    AssetId provided_asset_id = 0;
};

struct DepositEnergyAsset {
    AssetId asset_id = 0;
};

struct DepositFinancial {
    std::uint64_t amount = 0;
};

using ContractCall = std::variant<AddEnergyAsset, AddFinancialBalance, PostOffer, RescindOffer,
                                  AcceptOffer, DepositEnergyAsset, DepositFinancial>;

struct LedgerTransaction {
    Authorization auth;
    std::uint64_t nonce = 0;  // strictly consecutive per signer, from 0
    ContractCall call;
};

// --- Contract events ------------------------------------------------------
// Broadcast results of successful calls. Payloads reference only anonymous
// addresses, identifiers and amounts; never an off-chain identity.

struct AssetAdded {
    AnonAddress owner;
    AssetId asset_id = 0;
    EnergyAsset asset;
};

struct FinancialAdded {
    AnonAddress owner;
    std::uint64_t amount = 0;
};

struct OfferPosted {
    OfferId offer_id = 0;
    AssetId asset_id = 0;
    std::uint64_t unit_price = 0;
};

struct OfferRescinded {
    OfferId offer_id = 0;
};

struct OfferAccepted {
    OfferId offer_id = 0;
    AssetId provided_asset_id = 0;
};

struct AssetDeposited {
    AnonAddress owner;
    AssetId asset_id = 0;
    EnergyAsset asset;  // full asset, so the DSO can credit the right schedule
};

struct FinancialDeposited {
    AnonAddress owner;
    std::uint64_t amount = 0;
};

using LedgerEvent = std::variant<AssetAdded, FinancialAdded, OfferPosted, OfferRescinded,
                                 OfferAccepted, AssetDeposited, FinancialDeposited>;

// --- Blocks ---------------------------------------------------------------

// A transaction as included in a block. Failures are data: the record keeps
// the reason and the transaction rolls back only its own effects.
struct TxRecord {
    LedgerTransaction tx;
    bool ok = false;
    std::string reason;  // empty when ok
};

struct Block {
    std::uint64_t height = 0;
    std::string parent_hash;
    std::vector<TxRecord> txs;
    std::vector<LedgerEvent> events;
    std::string state_hash;  // contract state hash after this block
    std::string hash;        // covers all fields above
    // Genesis only: the distinguished DSO signer this chain was created with.
    std::optional<AnonAddress> dso_address;
};

}  // namespace petra
