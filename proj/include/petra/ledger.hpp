#pragma once

#include <deque>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "petra/chain_types.hpp"
#include "petra/contract.hpp"

namespace petra {

struct SubmitResult {
    bool accepted = false;
    std::string reason;
};

// Simulated blockchain: accepts signed transactions into a FIFO queue, mines
// one block per call on a deterministic schedule, applies transactions to
// the contract, and keeps the ordered event history. Single writer: submit
// and mine_block are never called concurrently.
class Ledger {
  public:
    // Starts the chain with a genesis block recording the contract's DSO
    // address and initial state hash.
    explicit Ledger(Contract& contract);

    // Queues the transaction in arrival order. Rejects stale or out-of-order
    // nonces and structurally malformed payloads without any state change.
    SubmitResult submit(LedgerTransaction tx);

    // Drains the queue in FIFO order, applies every transaction, records
    // failures with their reasons, and appends the block. Empty blocks are
    // legal.
    const Block& mine_block();

    // All events in blocks (height, tip], in block order then intra-block
    // order. Throws std::out_of_range if height > tip.
    std::vector<LedgerEvent> events_since(std::uint64_t height) const;

    std::uint64_t tip_height() const { return blocks_.back().height; }
    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t pending_count() const { return queue_.size(); }

    // Next acceptable nonce for a signer.
    std::uint64_t next_nonce(const AnonAddress& signer) const;

    // Canonical line-delimited dump, one block per line.
    void dump(std::ostream& out) const;
    std::string dump_text() const;

  private:
    Contract& contract_;
    std::deque<LedgerTransaction> queue_;
    std::map<AnonAddress, std::uint64_t> next_nonce_;
    std::vector<Block> blocks_;
};

}  // namespace petra
