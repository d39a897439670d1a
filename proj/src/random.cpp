// SPDX-License-Identifier: Apache-2.0
//
// rula-sim: uplink spectral-efficiency simulator for rotary linear arrays
// Copyright (C) 2026 The rula-sim authors
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

#include "rula/random.hpp"

#include <array>

namespace rula
{

namespace
{
std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> counters)
{
    std::uint64_t h = splitmix64(seed);
    for (auto c : counters)
        h = splitmix64(h ^ splitmix64(c + 0x632be59bd9b4e019ULL));
    return h;
}

RandomStream make_stream(std::uint64_t seed, StreamTag tag, std::initializer_list<std::uint64_t> counters)
{
    std::uint64_t h = derive_seed(seed, {static_cast<std::uint64_t>(tag)});
    for (auto c : counters)
        h = derive_seed(h, {c});

    // Expand to 256 bits of seed material for the Mersenne twister state.
    std::array<std::uint32_t, 8> words{};
    std::uint64_t s = h;
    for (std::size_t i = 0; i < words.size(); i += 2)
    {
        s = splitmix64(s);
        words[i] = static_cast<std::uint32_t>(s);
        words[i + 1] = static_cast<std::uint32_t>(s >> 32);
    }
    std::seed_seq seq(words.begin(), words.end());
    return RandomStream(seq);
}

} // namespace rula
