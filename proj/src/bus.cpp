#include "petra/bus.hpp"

#include <stdexcept>
#include <utility>

namespace petra {

void Bus::register_endpoint(Endpoint endpoint) {
    endpoints_.insert(endpoint);
    inboxes_.try_emplace(endpoint);
}

bool Bus::is_registered(Endpoint endpoint) const {
    return endpoints_.count(endpoint) > 0;
}

void Bus::send(BusMessage message) {
    if (!is_registered(message.recipient)) {
        throw std::invalid_argument("Bus: unknown recipient endpoint " +
                                    std::to_string(message.recipient));
    }
    pending_.push_back(std::move(message));
}

void Bus::advance() {
    // Global send order is preserved, which preserves per-pair FIFO order.
    for (BusMessage& message : pending_) {
        inboxes_[message.recipient].push_back(std::move(message));
    }
    pending_.clear();
}

std::vector<BusMessage> Bus::poll(Endpoint endpoint) {
    if (!is_registered(endpoint)) {
        throw std::invalid_argument("Bus: unknown endpoint " + std::to_string(endpoint));
    }
    std::vector<BusMessage> delivered;
    delivered.swap(inboxes_[endpoint]);
    return delivered;
}

}  // namespace petra
