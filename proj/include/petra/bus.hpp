#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <variant>
#include <vector>

#include "petra/core_types.hpp"

namespace petra {

// Off-chain endpoints: one per prosumer (>= 0) plus the DSO.
using Endpoint = std::int32_t;
inline constexpr Endpoint kDsoEndpoint = -1;

// Prosumer -> DSO: transfer the listed assets and fiat from the prosumer's
// account to the given anonymous address. Attribution comes from the bus
// envelope's sender; the payload itself names no off-chain identity.
struct WithdrawAssets {
    AnonAddress to;
    std::vector<EnergyAsset> assets;
    std::uint64_t fiat = 0;
};

// DSO -> prosumer: the withdrawal was denied, nothing reached the chain.
struct FailedWithdrawal {
    AnonAddress to;
    std::string reason;
};

using BusPayload = std::variant<WithdrawAssets, FailedWithdrawal>;

struct BusMessage {
    Endpoint sender = 0;
    Endpoint recipient = 0;
    BusPayload payload;
};

// Deterministic in-process messaging between prosumers and the DSO. Messages
// sent during a timestep become visible to the recipient at the next
// timestep boundary; delivery is exactly once, FIFO per sender-recipient
// pair.
class Bus {
  public:
    void register_endpoint(Endpoint endpoint);
    bool is_registered(Endpoint endpoint) const;

    // Queues for delivery at the next boundary. Throws std::invalid_argument
    // on an unregistered recipient.
    void send(BusMessage message);

    // Timestep boundary: everything queued becomes deliverable.
    void advance();

    // Drains the endpoint's inbox in delivery order.
    std::vector<BusMessage> poll(Endpoint endpoint);

  private:
    std::set<Endpoint> endpoints_;
    std::vector<BusMessage> pending_;
    std::map<Endpoint, std::vector<BusMessage>> inboxes_;
};

}  // namespace petra
