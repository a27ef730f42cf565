#include "bb84sec/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "bb84sec/agreement.hpp"

namespace bb84sec::mc {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint8_t random_bit(std::mt19937_64& rng) {
    return static_cast<std::uint8_t>(rng() >> 63);
}

Basis random_basis(std::mt19937_64& rng) {
    return random_bit(rng) ? Basis::x : Basis::z;
}

}  // namespace

std::uint64_t derive_block_seed(std::uint64_t seed, std::uint64_t block_index) {
    return splitmix64(seed + (block_index + 1) * 0x9e3779b97f4a7c15ull);
}

PhotonState apply_pauli(PhotonState photon, PauliOperator op) {
    // Only bit flips in the encoding basis are observable; phases drop out.
    const bool flips = (op == PauliOperator::y) ||
                       (op == PauliOperator::x && photon.basis == Basis::z) ||
                       (op == PauliOperator::z && photon.basis == Basis::x);
    if (flips) photon.bit ^= 1;
    return photon;
}

PhotonState apply_depolarizing(PhotonState photon, double p, std::mt19937_64& rng) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("apply_depolarizing: p outside [0,1]");
    }
    const double u = uniform_unit(rng);
    if (u < 1.0 - p) {
        return photon;
    }
    const double r = 3.0 * (u - (1.0 - p)) / p;
    const PauliOperator op = r < 1.0   ? PauliOperator::x
                             : r < 2.0 ? PauliOperator::y
                                       : PauliOperator::z;
    return apply_pauli(photon, op);
}

namespace {

std::size_t sample_segment(const std::vector<double>& qs, std::mt19937_64& rng) {
    const double u = uniform_unit(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
        acc += qs[i];
        if (u < acc) return i;
    }
    return qs.size() - 1;
}

void transmit_photon_into(ChannelNoise channel, const AttackChain& chain,
                          std::mt19937_64& rng, TransmitRecord& out) {
    const std::size_t n = chain.eavesdropper_count();
    out.alice_basis = random_basis(rng);
    out.alice_bit = random_bit(rng);
    out.eves.resize(n);

    // Exactly one segment carries the depolarizing event.
    const std::size_t noise_segment = sample_segment(chain.qs(), rng);

    PhotonState photon{out.alice_basis, out.alice_bit};
    for (std::size_t i = 0; i < n; ++i) {
        if (noise_segment == i) {
            photon = apply_depolarizing(photon, channel.p(), rng);
        }
        const bool intercepted = uniform_unit(rng) < chain.omegas()[i];
        if (intercepted) {
            const Basis eve_basis = random_basis(rng);
            const std::uint8_t eve_bit =
                eve_basis == photon.basis ? photon.bit : random_bit(rng);
            out.eves[i] = {eve_bit, true};
            photon = {eve_basis, eve_bit};  // re-send what she measured
        } else {
            // No interaction; she logs an uninformed guess.
            out.eves[i] = {random_bit(rng), false};
        }
    }
    if (noise_segment == n) {
        photon = apply_depolarizing(photon, channel.p(), rng);
    }
    out.bob_basis = random_basis(rng);
    out.bob_bit = out.bob_basis == photon.basis ? photon.bit : random_bit(rng);
}

}  // namespace

TransmitRecord transmit_photon(ChannelNoise channel, const AttackChain& chain,
                               std::mt19937_64& rng) {
    TransmitRecord out;
    transmit_photon_into(channel, chain, rng, out);
    return out;
}

namespace {

struct Counts {
    std::uint64_t sifted = 0;
    std::uint64_t bob_agree = 0;
    std::vector<std::uint64_t> eve_agree;

    explicit Counts(std::size_t n_eves) : eve_agree(n_eves, 0) {}

    void merge(const Counts& other) {
        sifted += other.sifted;
        bob_agree += other.bob_agree;
        for (std::size_t i = 0; i < eve_agree.size(); ++i) {
            eve_agree[i] += other.eve_agree[i];
        }
    }
};

void run_block(std::uint64_t block, std::uint64_t n_photons, std::uint64_t seed,
               ChannelNoise channel, const AttackChain& chain, Counts& counts,
               TransmitRecord& scratch) {
    std::mt19937_64 rng(derive_block_seed(seed, block));
    const std::uint64_t begin = block * kBlockSize;
    const std::uint64_t end = std::min(begin + kBlockSize, n_photons);
    for (std::uint64_t i = begin; i < end; ++i) {
        transmit_photon_into(channel, chain, rng, scratch);
        if (!scratch.sifted()) continue;
        ++counts.sifted;
        counts.bob_agree += scratch.bob_bit == scratch.alice_bit;
        for (std::size_t e = 0; e < scratch.eves.size(); ++e) {
            counts.eve_agree[e] += scratch.eves[e].bit == scratch.alice_bit;
        }
    }
}

AgreementEstimate make_estimate(std::uint64_t agree, std::uint64_t sifted) {
    const double v = static_cast<double>(agree) / static_cast<double>(sifted);
    return {agree, v, std::sqrt(v * (1.0 - v) / static_cast<double>(sifted))};
}

}  // namespace

SimEstimate run(const SimConfig& config, ChannelNoise channel, const AttackChain& chain) {
    if (config.n_photons == 0) {
        throw std::invalid_argument("mc::run: n_photons must be positive");
    }
    const std::size_t n_eves = chain.eavesdropper_count();
    const std::uint64_t n_blocks = (config.n_photons + kBlockSize - 1) / kBlockSize;

    unsigned threads = config.threads != 0 ? config.threads
                                           : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(
        std::min<std::uint64_t>(threads, n_blocks));

    Counts total(n_eves);
    if (threads <= 1) {
        TransmitRecord scratch;
        for (std::uint64_t b = 0; b < n_blocks; ++b) {
            run_block(b, config.n_photons, config.seed, channel, chain, total, scratch);
        }
    } else {
        std::atomic<std::uint64_t> next_block{0};
        std::mutex merge_mutex;
        auto worker = [&] {
            Counts local(n_eves);
            TransmitRecord scratch;
            for (std::uint64_t b = next_block.fetch_add(1); b < n_blocks;
                 b = next_block.fetch_add(1)) {
                run_block(b, config.n_photons, config.seed, channel, chain, local, scratch);
            }
            const std::lock_guard<std::mutex> lock(merge_mutex);
            total.merge(local);
        };
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    if (total.sifted == 0) {
        throw std::runtime_error("mc::run: no sifted photons");
    }
    SimEstimate est;
    est.n_photons = config.n_photons;
    est.sifted_count = total.sifted;
    est.bob = make_estimate(total.bob_agree, total.sifted);
    est.eves.reserve(n_eves);
    for (std::size_t e = 0; e < n_eves; ++e) {
        est.eves.push_back(make_estimate(total.eve_agree[e], total.sifted));
    }
    return est;
}

double ComparisonReport::max_abs_z() const {
    double worst = 0.0;
    for (const auto& e : entries) worst = std::max(worst, std::abs(e.z));
    return worst;
}

bool ComparisonReport::all_within(double z_limit) const {
    return max_abs_z() <= z_limit;
}

namespace {

double z_score(double estimate, double std_error, double closed_form) {
    if (std_error > 0.0) {
        return (estimate - closed_form) / std_error;
    }
    if (estimate == closed_form) {
        return 0.0;  // degenerate corner, e.g. p = 0 with no eavesdroppers
    }
    throw std::runtime_error("compare_to_closed_form: zero spread but mismatch");
}

}  // namespace

ComparisonReport compare_to_closed_form(const SimEstimate& estimate,
                                        ChannelNoise channel, const AttackChain& chain) {
    if (estimate.eves.size() != chain.eavesdropper_count()) {
        throw std::invalid_argument(
            "compare_to_closed_form: estimate does not match the chain");
    }
    ComparisonReport report;
    const double bob_closed = bob_agreement(channel, chain.omegas()).value();
    report.entries.push_back({"bob", estimate.bob.value, estimate.bob.std_error,
                              bob_closed,
                              z_score(estimate.bob.value, estimate.bob.std_error,
                                      bob_closed)});
    for (std::size_t m = 1; m <= chain.eavesdropper_count(); ++m) {
        const auto& eve = estimate.eves[m - 1];
        const double closed = eve_agreement(m, channel, chain).value();
        report.entries.push_back({"eve" + std::to_string(m), eve.value, eve.std_error,
                                  closed, z_score(eve.value, eve.std_error, closed)});
    }
    return report;
}

}  // namespace bb84sec::mc
