#include "petra/ledger.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "petra/hash.hpp"
#include "petra/wire.hpp"

namespace petra {

Ledger::Ledger(Contract& contract) : contract_(contract) {
    Block genesis;
    genesis.height = 0;
    genesis.parent_hash = kNullHash;
    genesis.state_hash = wire::contract_state_hash(contract_);
    genesis.dso_address = contract_.dso_address();
    genesis.hash = wire::block_hash(genesis);
    blocks_.push_back(std::move(genesis));
}

SubmitResult Ledger::submit(LedgerTransaction tx) {
    const std::uint64_t expected = next_nonce(tx.auth.signer);
    if (tx.nonce != expected) {
        return SubmitResult{false, "nonce " + std::to_string(tx.nonce) + " out of order (expected " +
                                       std::to_string(expected) + ")"};
    }
    if (const auto* add = std::get_if<AddEnergyAsset>(&tx.call); add && !add->asset.is_valid()) {
        return SubmitResult{false, "malformed payload: invalid energy asset"};
    }
    next_nonce_[tx.auth.signer] = expected + 1;
    queue_.push_back(std::move(tx));
    return SubmitResult{true, ""};
}

const Block& Ledger::mine_block() {
    Block block;
    block.height = blocks_.back().height + 1;
    block.parent_hash = blocks_.back().hash;
    while (!queue_.empty()) {
        LedgerTransaction tx = std::move(queue_.front());
        queue_.pop_front();
        ApplyResult result = contract_.apply(tx);
        block.txs.push_back(TxRecord{std::move(tx), result.ok, std::move(result.reason)});
        for (LedgerEvent& event : result.events) {
            block.events.push_back(std::move(event));
        }
    }
    block.state_hash = wire::contract_state_hash(contract_);
    block.hash = wire::block_hash(block);
    blocks_.push_back(std::move(block));
    return blocks_.back();
}

std::vector<LedgerEvent> Ledger::events_since(std::uint64_t height) const {
    if (height > tip_height()) {
        throw std::out_of_range("events_since: height beyond tip");
    }
    std::vector<LedgerEvent> events;
    for (std::uint64_t h = height + 1; h <= tip_height(); ++h) {
        const Block& block = blocks_[h];
        events.insert(events.end(), block.events.begin(), block.events.end());
    }
    return events;
}

std::uint64_t Ledger::next_nonce(const AnonAddress& signer) const {
    const auto it = next_nonce_.find(signer);
    return it == next_nonce_.end() ? 0 : it->second;
}

void Ledger::dump(std::ostream& out) const {
    for (const Block& block : blocks_) {
        out << wire::canonical(wire::to_wire(block)) << '\n';
    }
}

std::string Ledger::dump_text() const {
    std::ostringstream out;
    dump(out);
    return out.str();
}

}  // namespace petra
