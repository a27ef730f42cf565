#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bb84sec/attack_chain.hpp"
#include "bb84sec/channel.hpp"

namespace bb84sec::mc {

enum class Basis : std::uint8_t { z, x };

struct PhotonState {
    Basis basis;
    std::uint8_t bit;  // 0 or 1, meaningful in `basis`

    bool operator==(const PhotonState&) const = default;
};

enum class PauliOperator : std::uint8_t { identity, x, y, z };

// Action on the encoded bit: X flips a Z-basis bit, Z flips an X-basis bit,
// Y flips both, phases are unobservable here.
PhotonState apply_pauli(PhotonState photon, PauliOperator op);

// One depolarizing event: identity with probability 1-p, otherwise a Pauli
// chosen uniformly.  Always consumes exactly one draw so RNG streams stay
// aligned across parameter values.
PhotonState apply_depolarizing(PhotonState photon, double p, std::mt19937_64& rng);

struct EveObservation {
    std::uint8_t bit;
    bool intercepted;
};

struct TransmitRecord {
    Basis alice_basis;
    std::uint8_t alice_bit;
    std::vector<EveObservation> eves;  // in line order
    Basis bob_basis;
    std::uint8_t bob_bit;

    bool sifted() const { return alice_basis == bob_basis; }
};

// One photon end to end: Alice prepares in a random basis, a single noise
// segment is drawn from chain.qs(), each eavesdropper intercepts with her
// omega (measuring in a random basis and re-sending what she saw) or lets the
// photon pass and logs a guess, Bob measures in a random basis.
TransmitRecord transmit_photon(ChannelNoise channel, const AttackChain& chain,
                               std::mt19937_64& rng);

struct SimConfig {
    std::uint64_t n_photons;
    std::uint64_t seed;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct AgreementEstimate {
    std::uint64_t agree_count;
    double value;      // agree_count / sifted_count
    double std_error;  // binomial, sqrt(v(1-v)/sifted_count)
};

struct SimEstimate {
    std::uint64_t n_photons;
    std::uint64_t sifted_count;
    AgreementEstimate bob;
    std::vector<AgreementEstimate> eves;  // agreement with Alice on sifted bits
};

// Photons are processed in fixed blocks of kBlockSize, each with its own
// counter-derived RNG stream, and the integer counts are merged by block
// index — results are bit-identical for any thread count.
inline constexpr std::uint64_t kBlockSize = 16384;

std::uint64_t derive_block_seed(std::uint64_t seed, std::uint64_t block_index);

SimEstimate run(const SimConfig& config, ChannelNoise channel,
                const AttackChain& chain);

struct ZScoreEntry {
    std::string party;   // "bob", "eve1", ...
    double estimate;
    double std_error;
    double closed_form;
    double z;
};

struct ComparisonReport {
    std::vector<ZScoreEntry> entries;

    double max_abs_z() const;
    bool all_within(double z_limit) const;
};

// z-scores of every estimated agreement against its closed form.  A zero
// standard error is only tolerated when the estimate matches exactly
// (degenerate parameter corners); otherwise throws std::runtime_error.
ComparisonReport compare_to_closed_form(const SimEstimate& estimate,
                                        ChannelNoise channel,
                                        const AttackChain& chain);

}  // namespace bb84sec::mc
