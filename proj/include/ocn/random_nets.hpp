#pragma once

#include "ocn/net.hpp"

#include <random>

namespace ocn
{

using rng_t = std::mt19937_64;

struct random_net_options
{
    int states = 3;
    int letters = 2;
    int transitions = 6;
    long max_delta = 1;
    double final_ratio = 0.4;
    bool deterministic = false;
    bool complete = false;
};

// Letters are a, b, c, ...; states are q0, q1, ...
net random_net( rng_t& rng, const random_net_options& opts );

std::vector<word> all_words( int letters, int max_len );

} // namespace ocn
