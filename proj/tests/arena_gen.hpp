#pragma once

#include "ocn/game.hpp"
#include "ocn/random_nets.hpp"

#include <random>

namespace testgen
{

// Small random arena that respects the counter ownership discipline.
inline ocn::monotone_arena random_arena( ocn::rng_t& rng, int controls, int moves, double target_ratio = 0.25,
                                         bool counters = true )
{
    ocn::monotone_arena a;
    std::bernoulli_distribution coin( 0.5 ), tgt( target_ratio );
    for ( int c = 0; c < controls; ++c )
        a.add_control( coin( rng ) ? ocn::player::eve : ocn::player::adam, tgt( rng ), "c" + std::to_string( c ) );
    std::uniform_int_distribution<int> pick( 0, controls - 1 ), d( counters ? -1 : 0, counters ? 1 : 0 );
    for ( int i = 0; i < moves; ++i )
    {
        int s = pick( rng ), t = pick( rng );
        long delta = d( rng );
        std::string label = "m" + std::to_string( i );
        if ( a.owner[s] == ocn::player::adam )
            a.add_move( s, t, delta, 0, label );
        else
            a.add_move( s, t, 0, delta, label );
    }
    return a;
}

} // namespace testgen
