#include "petra/core_types.hpp"

#include <limits>
#include <stdexcept>

namespace petra {

namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

}  // namespace

void TimeConfig::validate() const {
    if (interval_seconds < 1) {
        throw std::invalid_argument("TimeConfig: interval_seconds must be >= 1");
    }
    if (horizon < 1) {
        throw std::invalid_argument("TimeConfig: horizon must be >= 1");
    }
}

std::uint64_t abs_power(std::int64_t power) {
    if (power >= 0) {
        return static_cast<std::uint64_t>(power);
    }
    // Two's complement negate in unsigned space; handles INT64_MIN.
    return ~static_cast<std::uint64_t>(power) + 1;
}

std::int64_t signed_power(bool production, std::uint64_t magnitude) {
    constexpr std::uint64_t kMaxPos = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
    if (production) {
        if (magnitude > kMaxPos) {
            throw std::overflow_error("signed_power: magnitude exceeds int64 range");
        }
        return static_cast<std::int64_t>(magnitude);
    }
    if (magnitude > kMaxPos + 1) {
        throw std::overflow_error("signed_power: magnitude exceeds int64 range");
    }
    if (magnitude == kMaxPos + 1) {
        return std::numeric_limits<std::int64_t>::min();
    }
    return -static_cast<std::int64_t>(magnitude);
}

void EnergyAsset::validate() const {
    if (power == 0) {
        throw std::invalid_argument("EnergyAsset: power must be nonzero");
    }
    if (start > end) {
        throw std::invalid_argument("EnergyAsset: start must be <= end");
    }
    const auto len = static_cast<unsigned __int128>(end - start) + 1;
    const auto energy = static_cast<unsigned __int128>(abs_power(power)) * len;
    if (energy > kU64Max) {
        throw std::overflow_error("EnergyAsset: energy exceeds the unsigned 64-bit range");
    }
}

bool EnergyAsset::is_valid() const {
    try {
        validate();
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

EnergyAsset make_asset(std::int64_t power, Timestep start, Timestep end) {
    EnergyAsset asset{power, start, end};
    asset.validate();
    return asset;
}

std::uint64_t energy_of(const EnergyAsset& asset) {
    asset.validate();
    const auto len = static_cast<unsigned __int128>(asset.end - asset.start) + 1;
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(abs_power(asset.power)) * len);
}

std::optional<std::uint64_t> checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > kU64Max - b) {
        return std::nullopt;
    }
    return a + b;
}

std::optional<std::uint64_t> checked_sub(std::uint64_t a, std::uint64_t b) {
    if (b > a) {
        return std::nullopt;
    }
    return a - b;
}

std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
    const auto wide = static_cast<unsigned __int128>(a) * b;
    if (wide > kU64Max) {
        return std::nullopt;
    }
    return static_cast<std::uint64_t>(wide);
}

std::string AnonAddress::hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out = "0x";
    out.reserve(2 + 2 * value.size());
    for (std::uint8_t byte : value) {
        out.push_back(kDigits[byte >> 4]);
        out.push_back(kDigits[byte & 0x0f]);
    }
    return out;
}

AnonAddress address_from_hex(const std::string& text) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        return -1;
    };
    if (text.size() != 42 || text[0] != '0' || text[1] != 'x') {
        throw std::invalid_argument("AnonAddress: expected 0x-prefixed 40-digit hex string");
    }
    AnonAddress addr;
    for (std::size_t i = 0; i < addr.value.size(); ++i) {
        const int hi = nibble(text[2 + 2 * i]);
        const int lo = nibble(text[3 + 2 * i]);
        if (hi < 0 || lo < 0) {
            throw std::invalid_argument("AnonAddress: non-hex digit in address");
        }
        addr.value[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return addr;
}

AnonAddress random_address(std::mt19937_64& rng) {
    AnonAddress addr;
    std::size_t pos = 0;
    while (pos < addr.value.size()) {
        std::uint64_t word = rng();
        for (int i = 0; i < 8 && pos < addr.value.size(); ++i, ++pos) {
            addr.value[pos] = static_cast<std::uint8_t>(word >> (8 * i));
        }
    }
    return addr;
}

AnonAddress AddressGenerator::fresh() {
    AnonAddress addr = random_address(rng_);
    if (!issued_.insert(addr).second) {
        throw std::runtime_error("AddressGenerator: address collision within a run");
    }
    return addr;
}

}  // namespace petra
