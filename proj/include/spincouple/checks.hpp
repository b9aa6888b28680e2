// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace spincouple {

/// One failing instance of a checked identity, with the inputs spelled
/// out far enough to reproduce the evaluation by hand.
struct CheckFailure {
    std::string identity;
    std::string inputs;
    std::string detail;
};

/// Pass and fail counts for one identity within a suite.
struct IdentityTally {
    std::string identity;
    long long checked = 0;
    long long failed = 0;
};

/// Outcome of one verification suite run.
struct SuiteReport {
    static constexpr std::size_t kMaxFailures = 10;

    std::string suite;
    std::vector<IdentityTally> identities;
    std::vector<CheckFailure> failures;

    long long checked() const;
    long long failed() const;
    bool passed() const { return failed() == 0; }
};

/// Sweep sizes for the randomized and exhaustive portions of the
/// suites.  quick() keeps an interactive run short; acceptance() widens
/// every sweep to the ranges the release gate exercises.
struct CheckScale {
    int recoupling_tuples = 120;
    int route_lmax = 4;
    int extraction_lmax = 3;
    int extraction_word_len = 2;
    int harmonic_lmax = 2;
    int frames = 6;
    int frame_lmax = 4;
    int ladder_lmax = 8;

    static CheckScale quick() { return {}; }
    static CheckScale acceptance();
};

/// Names of the available suites, in canonical order.
const std::vector<std::string>& check_suite_names();

/// Runs one named suite; the seed fixes every random draw inside.
/// Throws std::invalid_argument for a name outside check_suite_names().
SuiteReport run_check_suite(const std::string& suite, std::uint64_t seed,
                            const CheckScale& scale = CheckScale::quick());

}  // namespace spincouple
