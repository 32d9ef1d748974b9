#pragma once

#include <json.hpp>

#include <string>

#include "petra/bus.hpp"
#include "petra/chain_types.hpp"
#include "petra/contract.hpp"

namespace petra::wire {

using Json = nlohmann::json;  // object keys sort lexicographically

// Canonical text form: compact JSON with sorted keys. Every chain artifact
// serializes through here; the ledger dump, the block and state hashes, and
// the privacy scan all operate on this form.
std::string canonical(const Json& value);

Json to_wire(const EnergyAsset& asset);
Json to_wire(const AnonAddress& addr);
Json to_wire(const ContractCall& call);
Json to_wire(const LedgerTransaction& tx);
Json to_wire(const LedgerEvent& event);
Json to_wire(const TxRecord& record);
Json to_wire(const Block& block);
Json to_wire(const BusMessage& message);

EnergyAsset asset_from_wire(const Json& j);
AnonAddress address_from_wire(const Json& j);
ContractCall call_from_wire(const Json& j);
LedgerTransaction tx_from_wire(const Json& j);
LedgerEvent event_from_wire(const Json& j);
TxRecord tx_record_from_wire(const Json& j);
Block block_from_wire(const Json& j);

// Full contract state in canonical form, and its SHA-256 hash. Used by the
// atomicity and replay checks.
Json contract_state_wire(const Contract& contract);
std::string contract_state_hash(const Contract& contract);

// Block hash over every field except `hash` itself.
std::string block_hash(const Block& block);

}  // namespace petra::wire
