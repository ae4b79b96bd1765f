#pragma once

// Shared generators for the unit and acceptance suites.

#include <cstdint>
#include <string>

#include "travesty/receiver.hpp"
#include "travesty/rng.hpp"
#include "travesty/signal_model.hpp"
#include "travesty/traffic_ingest.hpp"

namespace travesty::testing {

// Random pmf over `size` signals. With zero_slot >= 0 that entry is forced to
// zero mass to exercise the degenerate likelihood-ratio branches.
inline Eigen::VectorXd random_pmf(Eigen::Index size, SplitMix64& rng, Eigen::Index zero_slot = -1) {
    Eigen::VectorXd pmf(size);
    for (Eigen::Index i = 0; i < size; ++i) pmf(i) = 0.05 + rng.next_unit();
    if (zero_slot >= 0 && size > 1) pmf(zero_slot % size) = 0.0;
    pmf /= pmf.sum();
    Eigen::Index largest = 0;
    pmf.maxCoeff(&largest);
    pmf(largest) += 1.0 - pmf.sum();  // pin the total exactly to 1 on a safely positive slot
    return pmf;
}

inline SignalModel random_model(Eigen::Index size, SplitMix64& rng, bool allow_zeros = false) {
    SignalModel model;
    for (Eigen::Index i = 0; i < size; ++i) model.signals.push_back(std::to_string(i));
    const Eigen::Index zero1 = allow_zeros && rng.next() % 4 == 0 ? static_cast<Eigen::Index>(rng.next() % size) : -1;
    const Eigen::Index zero0 = allow_zeros && rng.next() % 4 == 0 ? static_cast<Eigen::Index>(rng.next() % size) : -1;
    model.f1 = random_pmf(size, rng, zero1);
    model.f0 = random_pmf(size, rng, zero0);
    return model;
}

inline Belief random_belief(SplitMix64& rng) {
    const double pH1 = 0.02 + 0.96 * rng.next_unit();
    return Belief{pH1, 1.0 - pH1};
}

// Compact three-field record stream "<junk>,<login>,<label>" matching the
// schema {label_column = 2, login_column = 1}. The four count groups are
// interleaved deterministically so parsing order carries no information.
inline std::string synthetic_records(std::uint64_t attack_total, std::uint64_t attack_success,
                                     std::uint64_t normal_total, std::uint64_t normal_success) {
    std::string out;
    out.reserve((attack_total + normal_total) * 14);
    std::uint64_t attack_emitted = 0, normal_emitted = 0;
    const std::uint64_t total = attack_total + normal_total;
    for (std::uint64_t i = 0; i < total; ++i) {
        const bool pick_attack = attack_emitted * total <= i * attack_total && attack_emitted < attack_total;
        if (pick_attack || normal_emitted == normal_total) {
            out += attack_emitted < attack_success ? "x,1,neptune.\n" : "x,0,neptune.\n";
            ++attack_emitted;
        } else {
            out += normal_emitted < normal_success ? "x,1,normal.\n" : "x,0,normal.\n";
            ++normal_emitted;
        }
    }
    return out;
}

inline RecordSchema compact_schema() {
    RecordSchema schema;
    schema.label_column = 2;
    schema.login_column = 1;
    return schema;
}

}  // namespace travesty::testing
