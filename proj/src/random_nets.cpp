#include "ocn/random_nets.hpp"

#include <set>
#include <tuple>

namespace ocn
{

net random_net( rng_t& rng, const random_net_options& opts )
{
    net n;
    n.kind = opts.max_delta > 1 ? net_kind::socn : net_kind::ocn;
    for ( int a = 0; a < opts.letters; ++a )
        n.add_letter( std::string( 1, static_cast<char>( 'a' + a ) ) );
    std::bernoulli_distribution fin( opts.final_ratio );
    for ( int q = 0; q < opts.states; ++q )
        n.add_state( "q" + std::to_string( q ), fin( rng ) );
    n.initial = 0;

    std::uniform_int_distribution<int> st( 0, opts.states - 1 ), lt( 0, opts.letters - 1 );
    std::uniform_int_distribution<long> dt( -opts.max_delta, opts.max_delta );

    if ( opts.deterministic )
    {
        for ( int q = 0; q < opts.states; ++q )
            for ( int a = 0; a < opts.letters; ++a )
            {
                long d = dt( rng );
                // A complete deterministic net cannot decrement: counter 0 would block.
                if ( opts.complete && d < 0 )
                    d = 0;
                if ( opts.complete || std::bernoulli_distribution( 0.75 )( rng ) )
                    n.add_transition( q, a, d, st( rng ) );
            }
        return n;
    }

    std::set<std::tuple<int, int, long, int>> seen;
    for ( int i = 0; i < opts.transitions; ++i )
    {
        std::tuple<int, int, long, int> t{ st( rng ), lt( rng ), dt( rng ), st( rng ) };
        if ( seen.insert( t ).second )
            n.add_transition( std::get<0>( t ), std::get<1>( t ), std::get<2>( t ), std::get<3>( t ) );
    }
    return opts.complete ? ocn::complete( n ) : n;
}

std::vector<word> all_words( int letters, int max_len )
{
    std::vector<word> out{ {} };
    std::size_t begin = 0;
    for ( int len = 1; len <= max_len; ++len )
    {
        std::size_t end = out.size();
        for ( std::size_t i = begin; i < end; ++i )
            for ( int a = 0; a < letters; ++a )
            {
                word w = out[i];
                w.push_back( a );
                out.push_back( std::move( w ) );
            }
        begin = end;
    }
    return out;
}

} // namespace ocn
