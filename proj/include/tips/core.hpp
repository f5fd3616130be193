#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace tips {

// Dense node index into a RoadNetwork. The I/O layer owns any mapping from
// external labels; everything past parsing works with these.
using NodeId = std::uint32_t;

// Distances are extended reals in meters; unreachable is an explicit infinity,
// never a sentinel magic number.
using Cost = double;
inline constexpr Cost kInfinity = std::numeric_limits<Cost>::infinity();

// ---------------------------------------------------------------------------
// Error taxonomy. The CLI maps InputError to exit code 2 and BudgetError to
// exit code 3; everything else is a bug.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or semantically invalid input (bad file, dangling node id,
// negative length, invalid parameter combination).
struct InputError : Error {
    using Error::Error;
};

struct NegativeLengthError : InputError {
    using InputError::InputError;
};

// Raised when an evaluation is requested against an empty facility set
// (inconvenience is undefined when there is nothing to detour to).
struct EmptyFacilitySetError : InputError {
    using InputError::InputError;
};

// Work or memory budget exceeded (e.g. too many subsets to enumerate).
struct BudgetError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Deterministic RNG. std:: distributions are implementation-defined, which
// would break byte-identical reproducibility across toolchains, so seeded
// randomness everywhere goes through this fixed SplitMix64 generator.
// ---------------------------------------------------------------------------

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform-ish integer in [0, n). The modulo bias is < n / 2^64 and
    // irrelevant for test workloads; determinism is what matters here.
    std::uint64_t bounded(std::uint64_t n) { return next() % n; }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

// Independent, reproducible stream for (seed, salt). Used to give parallel
// workers (restarts, trials, index instances) their own generators whose
// output does not depend on scheduling.
inline SplitMix64 rng_stream(std::uint64_t seed, std::uint64_t salt) {
    return SplitMix64(SplitMix64::mix(seed ^ (salt * 0x9E3779B97F4A7C15ULL)));
}

} // namespace tips
