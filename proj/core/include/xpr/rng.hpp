// SPDX-License-Identifier: Apache-2.0
//
// xprkit - multipath cross-polarization ratio modeling toolkit
// Copyright (C) 2025-2026 The xprkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef xprkit_rng_H
#define xprkit_rng_H

#include <cmath>
#include <cstdint>
#include <numbers>

namespace xpr
{

// Deterministic 64-bit generator (splitmix64). All stochastic code in the
// library draws through this class so that a fixed seed yields bit-identical
// output on every platform; the standard <random> distributions are
// implementation-defined and would break that guarantee.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t next_u64()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 random bits
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller. No state is cached between calls, so a
    // draw always consumes exactly two uniforms regardless of call history.
    double standard_normal()
    {
        double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Exponential with the given mean, truncated to [0, cap] via inverse CDF
    double truncated_exponential(double mean, double cap)
    {
        double u = uniform01();
        double mass = 1.0 - std::exp(-cap / mean);
        return -mean * std::log(1.0 - u * mass);
    }

    // Knuth's product method; adequate for the path-count range used here
    std::uint64_t poisson(double lambda)
    {
        double limit = std::exp(-lambda);
        double prod = 1.0;
        std::uint64_t n = 0;
        do
        {
            prod *= uniform01();
            ++n;
        } while (prod > limit);
        return n - 1;
    }

    // Independent substream derived from the construction seed; the result
    // does not depend on how many draws the parent has made.
    Rng fork(std::uint64_t stream) const
    {
        std::uint64_t z = seed_ ^ (0x9E3779B97F4A7C15ull * (stream + 0x632BE59BD9B4E019ull));
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return Rng(z ^ (z >> 31));
    }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

} // namespace xpr

#endif
