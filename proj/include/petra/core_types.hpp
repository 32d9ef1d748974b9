#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>

namespace petra {

// Index of a fixed-length time interval. All signals, assets and trades are
// expressed in these discrete timesteps.
using Timestep = std::uint64_t;

struct TimeConfig {
    std::uint32_t interval_seconds = 4;  // wall-clock seconds per timestep
    Timestep horizon = 1;                // timesteps in a scenario

    void validate() const;
};

// A commitment to produce (power > 0) or consume (power < 0) a constant power
// level over the closed interval [start, end]. Zero power is not an asset.
struct EnergyAsset {
    std::int64_t power = 0;  // watts, signed
    Timestep start = 0;      // first timestep, inclusive
    Timestep end = 0;        // last timestep, inclusive

    bool is_production() const { return power > 0; }
    bool is_consumption() const { return power < 0; }
    // Number of covered timesteps. Meaningful for valid assets only.
    std::uint64_t length() const { return end - start + 1; }
    bool covers(Timestep t) const { return start <= t && t <= end; }

    void validate() const;  // throws std::invalid_argument / std::overflow_error
    bool is_valid() const;

    auto operator<=>(const EnergyAsset&) const = default;
};

// Validating constructor.
EnergyAsset make_asset(std::int64_t power, Timestep start, Timestep end);

// |power| as an unsigned value, safe for INT64_MIN.
std::uint64_t abs_power(std::int64_t power);

// Combine a sign and a magnitude back into a signed power value.
// Throws std::overflow_error if the magnitude does not fit.
std::int64_t signed_power(bool production, std::uint64_t magnitude);

// Total energy in watt-intervals: |power| * (end - start + 1).
std::uint64_t energy_of(const EnergyAsset& asset);

// Checked unsigned 64-bit arithmetic; nullopt on overflow/underflow.
std::optional<std::uint64_t> checked_add(std::uint64_t a, std::uint64_t b);
std::optional<std::uint64_t> checked_sub(std::uint64_t a, std::uint64_t b);
std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b);

// Non-negative fiat amount in minor units of the local currency.
// Never mutated without a checked-arithmetic step.
struct FinancialBalance {
    std::uint64_t amount = 0;

    auto operator<=>(const FinancialBalance&) const = default;
};

// 160-bit opaque on-chain identity. Carries no structure that could link it
// to the household behind it; minted only through AddressGenerator.
struct AnonAddress {
    std::array<std::uint8_t, 20> value{};

    std::string hex() const;  // "0x" + 40 lowercase hex digits

    auto operator<=>(const AnonAddress&) const = default;
};

// Parses the hex() form back. Throws std::invalid_argument on bad input.
AnonAddress address_from_hex(const std::string& text);

// Off-chain household identity, known to the DSO only. Must never appear in
// any serialized ledger artifact.
struct ProsumerId {
    std::uint32_t value = 0;

    auto operator<=>(const ProsumerId&) const = default;
};

// Simulated signature: the identity the transaction claims to be signed by.
// A call is valid only if the signer matches the authority it requires.
struct Authorization {
    AnonAddress signer;
};

// One address drawn from the engine. Deterministic given engine state.
AnonAddress random_address(std::mt19937_64& rng);

// Mints run-unique anonymous addresses from a seeded generator. A collision
// within a run signals a broken generator and throws.
class AddressGenerator {
  public:
    explicit AddressGenerator(std::uint64_t seed) : rng_(seed) {}

    AnonAddress fresh();

    std::size_t issued_count() const { return issued_.size(); }

  private:
    std::mt19937_64 rng_;
    std::set<AnonAddress> issued_;
};

}  // namespace petra
