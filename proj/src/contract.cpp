#include "petra/contract.hpp"

#include <type_traits>

#include "petra/exchange.hpp"

namespace petra {

namespace {

ApplyResult fail(std::string reason) {
    return ApplyResult{false, std::move(reason), {}};
}

ApplyResult success(LedgerEvent event) {
    ApplyResult result;
    result.ok = true;
    result.events.push_back(std::move(event));
    return result;
}

}  // namespace

FinancialBalance Contract::balance_of(const AnonAddress& addr) const {
    const auto it = balances_.find(addr);
    return it == balances_.end() ? FinancialBalance{0} : it->second;
}

std::vector<std::pair<AssetId, AssetRecord>> Contract::assets_owned_by(const AnonAddress& addr) const {
    std::vector<std::pair<AssetId, AssetRecord>> owned;
    for (const auto& [id, record] : energy_assets_) {
        if (record.owner == addr) {
            owned.emplace_back(id, record);
        }
    }
    return owned;
}

std::vector<Offer> Contract::open_offers() const {
    std::vector<Offer> open;
    for (const auto& [id, offer] : offers_) {
        if (offer.status == OfferStatus::Open) {
            open.push_back(offer);
        }
    }
    return open;
}

ApplyResult Contract::apply(const LedgerTransaction& tx) {
    return std::visit(
        [&](const auto& call) -> ApplyResult {
            using T = std::decay_t<decltype(call)>;
            if constexpr (std::is_same_v<T, AddEnergyAsset>) {
                return add_energy_asset(tx.auth, call);
            } else if constexpr (std::is_same_v<T, AddFinancialBalance>) {
                return add_financial_balance(tx.auth, call);
            } else if constexpr (std::is_same_v<T, PostOffer>) {
                return post_offer(tx.auth, call);
            } else if constexpr (std::is_same_v<T, RescindOffer>) {
                return rescind_offer(tx.auth, call);
            } else if constexpr (std::is_same_v<T, AcceptOffer>) {
                return accept_offer(tx.auth, call);
            } else if constexpr (std::is_same_v<T, DepositEnergyAsset>) {
                return deposit_energy_asset(tx.auth, call);
            } else {
                static_assert(std::is_same_v<T, DepositFinancial>);
                return deposit_financial(tx.auth, call);
            }
        },
        tx.call);
}

AssetId Contract::mint_asset(const EnergyAsset& asset, const AnonAddress& owner) {
    const AssetId id = next_asset_id_++;
    energy_assets_.emplace(id, AssetRecord{asset, owner, false});
    return id;
}

ApplyResult Contract::add_energy_asset(const Authorization& auth, const AddEnergyAsset& call) {
    if (auth.signer != dso_address_) {
        return fail("addEnergyAsset: signer is not the DSO");
    }
    if (!call.asset.is_valid()) {
        return fail("addEnergyAsset: invalid asset");
    }
    const AssetId id = mint_asset(call.asset, call.owner);
    return success(AssetAdded{call.owner, id, call.asset});
}

ApplyResult Contract::add_financial_balance(const Authorization& auth, const AddFinancialBalance& call) {
    if (auth.signer != dso_address_) {
        return fail("addFinancialBalance: signer is not the DSO");
    }
    const auto updated = checked_add(balance_of(call.owner).amount, call.amount);
    if (!updated) {
        return fail("addFinancialBalance: balance overflow");
    }
    if (call.amount > 0) {
        balances_[call.owner] = FinancialBalance{*updated};
    }
    return success(FinancialAdded{call.owner, call.amount});
}

ApplyResult Contract::post_offer(const Authorization& auth, const PostOffer& call) {
    const auto it = energy_assets_.find(call.asset_id);
    if (it == energy_assets_.end()) {
        return fail("postOffer: unknown asset");
    }
    AssetRecord& record = it->second;
    if (record.owner != auth.signer) {
        return fail("postOffer: signer does not own the asset");
    }
    if (record.locked) {
        return fail("postOffer: asset is locked by another offer");
    }

    const OfferKind kind = record.asset.is_production() ? OfferKind::Ask : OfferKind::Bid;
    FinancialBalance escrow{0};
    if (kind == OfferKind::Bid) {
        const auto needed = checked_mul(call.unit_price, energy_of(record.asset));
        if (!needed) {
            return fail("postOffer: escrow overflows the 64-bit range");
        }
        const std::uint64_t balance = balance_of(auth.signer).amount;
        if (balance < *needed) {
            return fail("postOffer: insufficient balance for bid escrow");
        }
        escrow = FinancialBalance{*needed};
        balances_[auth.signer] = FinancialBalance{balance - *needed};
    }

    const OfferId id = next_offer_id_++;
    record.locked = true;
    offers_.emplace(id, Offer{id, call.asset_id, call.unit_price, auth.signer, kind, escrow,
                              OfferStatus::Open});
    return success(OfferPosted{id, call.asset_id, call.unit_price});
}

ApplyResult Contract::rescind_offer(const Authorization& auth, const RescindOffer& call) {
    const auto it = offers_.find(call.offer_id);
    if (it == offers_.end()) {
        return fail("rescindOffer: unknown offer");
    }
    Offer& offer = it->second;
    if (offer.status != OfferStatus::Open) {
        return fail("rescindOffer: offer is not open");
    }
    if (offer.poster != auth.signer) {
        return fail("rescindOffer: signer is not the poster");
    }
    const auto refunded = checked_add(balance_of(offer.poster).amount, offer.escrow.amount);
    if (!refunded) {
        return fail("rescindOffer: escrow refund overflow");
    }

    energy_assets_.at(offer.asset_id).locked = false;
    if (offer.escrow.amount > 0) {
        balances_[offer.poster] = FinancialBalance{*refunded};
    }
    offer.escrow = FinancialBalance{0};
    offer.status = OfferStatus::Rescinded;
    return success(OfferRescinded{call.offer_id});
}

ApplyResult Contract::accept_offer(const Authorization& auth, const AcceptOffer& call) {
    const auto offer_it = offers_.find(call.offer_id);
    if (offer_it == offers_.end()) {
        return fail("acceptOffer: unknown offer");
    }
    Offer& offer = offer_it->second;
    if (offer.status != OfferStatus::Open) {
        return fail("acceptOffer: offer is not open");
    }
    const auto provided_it = energy_assets_.find(call.provided_asset_id);
    if (provided_it == energy_assets_.end()) {
        return fail("acceptOffer: unknown provided asset");
    }
    const AssetRecord provided = provided_it->second;
    if (provided.owner != auth.signer) {
        return fail("acceptOffer: signer does not own the provided asset");
    }
    if (provided.locked) {
        return fail("acceptOffer: provided asset is locked");
    }
    const AssetRecord offered = energy_assets_.at(offer.asset_id);
    if (offered.asset.is_production() == provided.asset.is_production()) {
        return fail("acceptOffer: provided asset has the same sign as the offered asset");
    }
    const auto overlap = intersect(offered.asset, provided.asset);
    if (!overlap) {
        return fail("acceptOffer: time windows are disjoint");
    }

    const auto per_interval = checked_mul(offer.unit_price, overlap->matched_power);
    const auto payment = per_interval ? checked_mul(*per_interval, overlap->length()) : std::nullopt;
    if (!payment) {
        return fail("acceptOffer: payment overflows the 64-bit range");
    }

    // The ask poster sells, the bid poster buys. Asks draw payment from the
    // acceptor's balance at acceptance time; bids pay out of the escrow held
    // in the offer.
    const bool ask = offer.kind == OfferKind::Ask;
    const AnonAddress seller = ask ? offer.poster : auth.signer;
    const AnonAddress buyer = ask ? auth.signer : offer.poster;
    const bool self_trade = buyer == seller;
    FinancialBalance escrow = offer.escrow;

    // Compute post-trade balances in locals; nothing is mutated until every
    // check has passed.
    std::uint64_t buyer_balance = balance_of(buyer).amount;
    std::uint64_t seller_balance = balance_of(seller).amount;
    if (ask) {
        if (buyer_balance < *payment) {
            return fail("acceptOffer: insufficient acceptor funds");
        }
        buyer_balance -= *payment;
        if (self_trade) {
            seller_balance = buyer_balance;
        }
        escrow = FinancialBalance{*payment};
    }

    Settlement settlement;
    try {
        settlement = settle(offered.asset, provided.asset, offer.unit_price, escrow);
    } catch (const ExchangeError& e) {
        return fail(std::string("acceptOffer: ") + e.what());
    }

    const auto seller_credited = checked_add(seller_balance, settlement.payment_to_seller.amount);
    if (!seller_credited) {
        return fail("acceptOffer: seller balance overflow");
    }
    seller_balance = *seller_credited;
    if (self_trade) {
        buyer_balance = seller_balance;
    }
    if (settlement.refund_to_buyer.amount > 0) {
        const auto buyer_refunded = checked_add(buyer_balance, settlement.refund_to_buyer.amount);
        if (!buyer_refunded) {
            return fail("acceptOffer: buyer refund overflow");
        }
        buyer_balance = *buyer_refunded;
        if (self_trade) {
            seller_balance = buyer_balance;
        }
    }
    const auto matched = checked_mul(overlap->matched_power, overlap->length());
    const auto matched_total = matched ? checked_add(matched_energy_, *matched) : std::nullopt;
    if (!matched_total) {
        return fail("acceptOffer: matched-energy accumulator overflow");
    }

    // Mutation phase.
    const AnonAddress poster = offer.poster;
    const AnonAddress acceptor = auth.signer;
    const AssetId offered_asset_id = offer.asset_id;
    energy_assets_.erase(offer.asset_id);
    energy_assets_.erase(call.provided_asset_id);

    mint_asset(*settlement.matched_to_acceptor, acceptor);
    mint_asset(*settlement.matched_to_poster, poster);
    for (const EnergyAsset& piece : settlement.remainders_to_poster) {
        mint_asset(piece, poster);
    }
    for (const EnergyAsset& piece : settlement.remainders_to_acceptor) {
        mint_asset(piece, acceptor);
    }

    balances_[buyer] = FinancialBalance{buyer_balance};
    balances_[seller] = FinancialBalance{seller_balance};

    offer.escrow = FinancialBalance{0};
    offer.status = OfferStatus::Accepted;

    trade_count_ += 1;
    matched_energy_ = *matched_total;
    settlements_.push_back(SettlementRecord{call.offer_id, offered_asset_id, call.provided_asset_id,
                                            overlap->start, overlap->end, overlap->matched_power,
                                            offer.unit_price, *payment, seller, buyer});
    return success(OfferAccepted{call.offer_id, call.provided_asset_id});
}

ApplyResult Contract::deposit_energy_asset(const Authorization& auth, const DepositEnergyAsset& call) {
    const auto it = energy_assets_.find(call.asset_id);
    if (it == energy_assets_.end()) {
        return fail("depositEnergyAsset: unknown asset");
    }
    const AssetRecord& record = it->second;
    if (record.owner != auth.signer) {
        return fail("depositEnergyAsset: signer does not own the asset");
    }
    if (record.locked) {
        return fail("depositEnergyAsset: asset is locked by an open offer");
    }
    const AssetDeposited event{record.owner, call.asset_id, record.asset};
    energy_assets_.erase(it);
    return success(event);
}

ApplyResult Contract::deposit_financial(const Authorization& auth, const DepositFinancial& call) {
    const std::uint64_t balance = balance_of(auth.signer).amount;
    if (balance < call.amount) {
        return fail("depositFinancial: insufficient balance");
    }
    if (call.amount > 0) {
        balances_[auth.signer] = FinancialBalance{balance - call.amount};
    }
    return success(FinancialDeposited{auth.signer, call.amount});
}

}  // namespace petra
