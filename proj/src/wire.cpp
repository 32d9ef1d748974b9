#include "petra/wire.hpp"

#include <stdexcept>

#include "petra/hash.hpp"

namespace petra::wire {

namespace {

const char* offer_kind_name(OfferKind kind) {
    return kind == OfferKind::Ask ? "ask" : "bid";
}

const char* offer_status_name(OfferStatus status) {
    switch (status) {
        case OfferStatus::Open: return "open";
        case OfferStatus::Accepted: return "accepted";
        case OfferStatus::Rescinded: return "rescinded";
    }
    return "?";
}

}  // namespace

std::string canonical(const Json& value) {
    return value.dump();
}

Json to_wire(const EnergyAsset& asset) {
    return Json{{"end", asset.end}, {"power", asset.power}, {"start", asset.start}};
}

Json to_wire(const AnonAddress& addr) {
    return addr.hex();
}

EnergyAsset asset_from_wire(const Json& j) {
    return EnergyAsset{j.at("power").get<std::int64_t>(), j.at("start").get<Timestep>(),
                       j.at("end").get<Timestep>()};
}

AnonAddress address_from_wire(const Json& j) {
    return address_from_hex(j.get<std::string>());
}

Json to_wire(const ContractCall& call) {
    return std::visit(
        [](const auto& c) -> Json {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, AddEnergyAsset>) {
                return Json{{"asset", to_wire(c.asset)},
                            {"kind", "addEnergyAsset"},
                            {"owner", to_wire(c.owner)}};
            } else if constexpr (std::is_same_v<T, AddFinancialBalance>) {
                return Json{{"amount", c.amount},
                            {"kind", "addFinancialBalance"},
                            {"owner", to_wire(c.owner)}};
            } else if constexpr (std::is_same_v<T, PostOffer>) {
                return Json{{"asset_id", c.asset_id},
                            {"kind", "postOffer"},
                            {"unit_price", c.unit_price}};
            } else if constexpr (std::is_same_v<T, RescindOffer>) {
                return Json{{"kind", "rescindOffer"}, {"offer_id", c.offer_id}};
            } else if constexpr (std::is_same_v<T, AcceptOffer>) {
                return Json{{"kind", "acceptOffer"},
                            {"offer_id", c.offer_id},
                            {"provided_asset_id", c.provided_asset_id}};
            } else if constexpr (std::is_same_v<T, DepositEnergyAsset>) {
                return Json{{"asset_id", c.asset_id}, {"kind", "depositEnergyAsset"}};
            } else {
                static_assert(std::is_same_v<T, DepositFinancial>);
                return Json{{"amount", c.amount}, {"kind", "depositFinancial"}};
            }
        },
        call);
}

ContractCall call_from_wire(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "addEnergyAsset") {
        return AddEnergyAsset{address_from_wire(j.at("owner")), asset_from_wire(j.at("asset"))};
    }
    if (kind == "addFinancialBalance") {
        return AddFinancialBalance{address_from_wire(j.at("owner")),
                                   j.at("amount").get<std::uint64_t>()};
    }
    if (kind == "postOffer") {
        return PostOffer{j.at("asset_id").get<AssetId>(), j.at("unit_price").get<std::uint64_t>()};
    }
    if (kind == "rescindOffer") {
        return RescindOffer{j.at("offer_id").get<OfferId>()};
    }
    if (kind == "acceptOffer") {
        return AcceptOffer{j.at("offer_id").get<OfferId>(),
                           j.at("provided_asset_id").get<AssetId>()};
    }
    if (kind == "depositEnergyAsset") {
        return DepositEnergyAsset{j.at("asset_id").get<AssetId>()};
    }
    if (kind == "depositFinancial") {
        return DepositFinancial{j.at("amount").get<std::uint64_t>()};
    }
    throw std::invalid_argument("call_from_wire: unknown call kind '" + kind + "'");
}

Json to_wire(const LedgerTransaction& tx) {
    return Json{{"call", to_wire(tx.call)}, {"nonce", tx.nonce}, {"signer", to_wire(tx.auth.signer)}};
}

LedgerTransaction tx_from_wire(const Json& j) {
    return LedgerTransaction{Authorization{address_from_wire(j.at("signer"))},
                             j.at("nonce").get<std::uint64_t>(), call_from_wire(j.at("call"))};
}

Json to_wire(const LedgerEvent& event) {
    return std::visit(
        [](const auto& e) -> Json {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, AssetAdded>) {
                return Json{{"asset", to_wire(e.asset)},
                            {"asset_id", e.asset_id},
                            {"kind", "AssetAdded"},
                            {"owner", to_wire(e.owner)}};
            } else if constexpr (std::is_same_v<T, FinancialAdded>) {
                return Json{{"amount", e.amount},
                            {"kind", "FinancialAdded"},
                            {"owner", to_wire(e.owner)}};
            } else if constexpr (std::is_same_v<T, OfferPosted>) {
                return Json{{"asset_id", e.asset_id},
                            {"kind", "OfferPosted"},
                            {"offer_id", e.offer_id},
                            {"unit_price", e.unit_price}};
            } else if constexpr (std::is_same_v<T, OfferRescinded>) {
                return Json{{"kind", "OfferRescinded"}, {"offer_id", e.offer_id}};
            } else if constexpr (std::is_same_v<T, OfferAccepted>) {
                return Json{{"kind", "OfferAccepted"},
                            {"offer_id", e.offer_id},
                            {"provided_asset_id", e.provided_asset_id}};
            } else if constexpr (std::is_same_v<T, AssetDeposited>) {
                return Json{{"asset", to_wire(e.asset)},
                            {"asset_id", e.asset_id},
                            {"kind", "AssetDeposited"},
                            {"owner", to_wire(e.owner)}};
            } else {
                static_assert(std::is_same_v<T, FinancialDeposited>);
                return Json{{"amount", e.amount},
                            {"kind", "FinancialDeposited"},
                            {"owner", to_wire(e.owner)}};
            }
        },
        event);
}

LedgerEvent event_from_wire(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "AssetAdded") {
        return AssetAdded{address_from_wire(j.at("owner")), j.at("asset_id").get<AssetId>(),
                          asset_from_wire(j.at("asset"))};
    }
    if (kind == "FinancialAdded") {
        return FinancialAdded{address_from_wire(j.at("owner")),
                              j.at("amount").get<std::uint64_t>()};
    }
    if (kind == "OfferPosted") {
        return OfferPosted{j.at("offer_id").get<OfferId>(), j.at("asset_id").get<AssetId>(),
                           j.at("unit_price").get<std::uint64_t>()};
    }
    if (kind == "OfferRescinded") {
        return OfferRescinded{j.at("offer_id").get<OfferId>()};
    }
    if (kind == "OfferAccepted") {
        return OfferAccepted{j.at("offer_id").get<OfferId>(),
                             j.at("provided_asset_id").get<AssetId>()};
    }
    if (kind == "AssetDeposited") {
        return AssetDeposited{address_from_wire(j.at("owner")), j.at("asset_id").get<AssetId>(),
                              asset_from_wire(j.at("asset"))};
    }
    if (kind == "FinancialDeposited") {
        return FinancialDeposited{address_from_wire(j.at("owner")),
                                  j.at("amount").get<std::uint64_t>()};
    }
    throw std::invalid_argument("event_from_wire: unknown event kind '" + kind + "'");
}

Json to_wire(const TxRecord& record) {
    Json j{{"ok", record.ok}, {"tx", to_wire(record.tx)}};
    if (!record.ok) {
        j["reason"] = record.reason;
    }
    return j;
}

TxRecord tx_record_from_wire(const Json& j) {
    TxRecord record;
    record.tx = tx_from_wire(j.at("tx"));
    record.ok = j.at("ok").get<bool>();
    if (!record.ok) {
        record.reason = j.at("reason").get<std::string>();
    }
    return record;
}

Json to_wire(const Block& block) {
    Json txs = Json::array();
    for (const TxRecord& record : block.txs) {
        txs.push_back(to_wire(record));
    }
    Json events = Json::array();
    for (const LedgerEvent& event : block.events) {
        events.push_back(to_wire(event));
    }
    Json j{{"events", std::move(events)}, {"hash", block.hash},
           {"height", block.height},     {"parent_hash", block.parent_hash},
           {"state_hash", block.state_hash}, {"txs", std::move(txs)}};
    if (block.dso_address) {
        j["dso_address"] = to_wire(*block.dso_address);
    }
    return j;
}

Block block_from_wire(const Json& j) {
    Block block;
    block.height = j.at("height").get<std::uint64_t>();
    block.parent_hash = j.at("parent_hash").get<std::string>();
    block.state_hash = j.at("state_hash").get<std::string>();
    block.hash = j.at("hash").get<std::string>();
    for (const Json& record : j.at("txs")) {
        block.txs.push_back(tx_record_from_wire(record));
    }
    for (const Json& event : j.at("events")) {
        block.events.push_back(event_from_wire(event));
    }
    if (j.contains("dso_address")) {
        block.dso_address = address_from_wire(j.at("dso_address"));
    }
    return block;
}

Json to_wire(const BusMessage& message) {
    return std::visit(
        [&](const auto& payload) -> Json {
            using T = std::decay_t<decltype(payload)>;
            if constexpr (std::is_same_v<T, WithdrawAssets>) {
                Json assets = Json::array();
                for (const EnergyAsset& asset : payload.assets) {
                    assets.push_back(to_wire(asset));
                }
                return Json{{"kind", "withdrawAssets"},
                            {"payload", Json{{"assets", std::move(assets)},
                                             {"fiat", payload.fiat},
                                             {"to", to_wire(payload.to)}}},
                            {"recipient", message.recipient},
                            {"sender", message.sender}};
            } else {
                static_assert(std::is_same_v<T, FailedWithdrawal>);
                return Json{{"kind", "failedWithdrawal"},
                            {"payload", Json{{"reason", payload.reason}, {"to", to_wire(payload.to)}}},
                            {"recipient", message.recipient},
                            {"sender", message.sender}};
            }
        },
        message.payload);
}

Json contract_state_wire(const Contract& contract) {
    Json balances = Json::object();
    for (const auto& [addr, balance] : contract.balances()) {
        balances[addr.hex()] = balance.amount;
    }
    Json assets = Json::object();
    for (const auto& [id, record] : contract.energy_assets()) {
        assets[std::to_string(id)] = Json{{"asset", to_wire(record.asset)},
                                          {"locked", record.locked},
                                          {"owner", to_wire(record.owner)}};
    }
    Json offers = Json::object();
    for (const auto& [id, offer] : contract.offers()) {
        offers[std::to_string(id)] = Json{{"asset_id", offer.asset_id},
                                          {"escrow", offer.escrow.amount},
                                          {"kind", offer_kind_name(offer.kind)},
                                          {"offer_id", offer.offer_id},
                                          {"poster", to_wire(offer.poster)},
                                          {"status", offer_status_name(offer.status)},
                                          {"unit_price", offer.unit_price}};
    }
    return Json{{"balances", std::move(balances)},
                {"dso_address", to_wire(contract.dso_address())},
                {"energy_assets", std::move(assets)},
                {"matched_energy", contract.matched_energy()},
                {"next_asset_id", contract.next_asset_id()},
                {"next_offer_id", contract.next_offer_id()},
                {"offers", std::move(offers)},
                {"trade_count", contract.trade_count()}};
}

std::string contract_state_hash(const Contract& contract) {
    return sha256_hex(canonical(contract_state_wire(contract)));
}

std::string block_hash(const Block& block) {
    Json j = to_wire(block);
    j.erase("hash");
    return sha256_hex(canonical(j));
}

}  // namespace petra::wire
