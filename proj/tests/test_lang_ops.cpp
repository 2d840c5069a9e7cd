#include "oracles.hpp"

#include "ocn/hd.hpp"
#include "ocn/lang_ops.hpp"
#include "ocn/random_nets.hpp"
#include "ocn/text_format.hpp"

#include <doctest.h>

using namespace ocn;

namespace
{

net load( const std::string& name )
{
    return load_net( std::string( NETS_DIR ) + "/" + name );
}

// Some word of length <= len accepted by a but not by b.
bool bounded_included( const net& a, const net& b, int len )
{
    for ( const auto& w : all_words( a.num_letters(), len ) )
        if ( oracle::run_accepts( a, w ) && !oracle::run_accepts( b, w ) )
            return false;
    return true;
}

bool bounded_universal( const net& n, int len )
{
    for ( const auto& w : all_words( n.num_letters(), len ) )
        if ( !oracle::run_accepts( n, w ) )
            return false;
    return true;
}

std::vector<net> random_hd_nets( rng_t& rng, int count, random_net_options o )
{
    std::vector<net> out;
    while ( static_cast<int>( out.size() ) < count )
    {
        net n = random_net( rng, o );
        if ( is_history_deterministic( n ).result == outcome::eve_wins )
            out.push_back( n );
    }
    return out;
}

} // namespace

TEST_CASE( "cat augmentation" )
{
    rng_t rng( 3 );
    auto nets = random_hd_nets( rng, 20, { 3, 2, 6 } );
    for ( const auto& b : nets )
    {
        net m = augment_with_cat( b );
        int cat = m.find_letter( cat_letter );
        REQUIRE( cat == 2 );
        for ( const auto& w : all_words( 2, 6 ) )
            REQUIRE( oracle::run_accepts( m, w ) == oracle::run_accepts( b, w ) );
        for ( const auto& w : all_words( 3, 5 ) )
        {
            bool plain = std::find( w.begin(), w.end(), cat ) == w.end();
            bool want = w == word{ cat } || ( plain && oracle::run_accepts( b, w ) );
            REQUIRE( oracle::run_accepts( m, w ) == want );
        }
        INFO( emit_net( b ) );
        CHECK( is_history_deterministic( m ).result == outcome::eve_wins );
    }
    net clash = parse_net( "ocn\nalphabet __cat\nstate s init\n", { true } );
    CHECK_THROWS_AS( augment_with_cat( clash ), input_error );
}

TEST_CASE( "inclusion gadget shape" )
{
    net a = load( "balance.ocn" );
    net b = load( "counting.ocn" );
    net b2 = parse_net( "ocn\nalphabet a b\nstate s init final\nstate t final\ntrans s a +1 t\ntrans t a +1 t\n" );
    net g = inclusion_gadget( a, b2 );
    CHECK( g.num_states() == a.num_states() + b2.num_states() + 2 );
    // Embedded copies keep their transitions up to renaming.
    for ( const auto& t : a.transitions )
        CHECK( g.find_transition( "A." + a.state_names[t.src] + " " + a.letter_names[t.letter] + " " +
                                  ( t.delta > 0 ? "+1" : std::to_string( t.delta ) ) + " A." +
                                  a.state_names[t.dst] ) >= 0 );
    CHECK( g.transitions.size() == a.transitions.size() + b2.transitions.size() + 3 );
    CHECK_THROWS_AS( inclusion_gadget( a, b ), input_error );
}

TEST_CASE( "inclusion on small examples" )
{
    net empty = parse_net( "ocn\nalphabet a b\nstate s init\ntrans s a +1 s\n" );
    net star_a = parse_net( "ocn\nalphabet a b\nstate s init final\ntrans s a 0 s\n" );
    net star_ab = parse_net( "ocn\nalphabet a b\nstate s init final\ntrans s a 0 s\ntrans s b 0 s\n" );
    net eps = parse_net( "ocn\nalphabet a b\nstate s init final\n" );
    net bal = load( "balance.ocn" );

    CHECK( hd_inclusion( empty, bal ).result == outcome::eve_wins );
    CHECK( hd_inclusion( star_ab, eps ).result == outcome::adam_wins );
    CHECK( hd_inclusion( star_a, star_ab ).result == outcome::eve_wins );
    CHECK( hd_inclusion( star_ab, star_a ).result == outcome::adam_wins );
    for ( const net* x : { &empty, &star_a, &bal } )
    {
        CHECK( hd_inclusion( *x, *x ).result == outcome::eve_wins );
        CHECK( hd_equivalence( *x, *x ).result == outcome::eve_wins );
    }
    CHECK( hd_equivalence( star_a, star_ab ).result == outcome::adam_wins );
    CHECK( hd_equivalence( star_ab, star_a ).result == outcome::adam_wins );

    net fork = load( "fork.ocn" );
    net fork_det = parse_net( "ocn\nalphabet $ club heart\nstate s init\nstate t\nstate f final\n"
                              "trans s $ 0 t\ntrans t heart 0 f\ntrans t club 0 f\n" );
    try
    {
        hd_inclusion( fork, fork_det );
        FAIL( "expected a refusal" );
    }
    catch ( const not_hd_error& e )
    {
        CHECK( e.which == "first net" );
        CHECK_FALSE( e.witness.empty() );
    }
}

TEST_CASE( "inclusion against bounded word inclusion" )
{
    rng_t rng( 11 );
    auto nets = random_hd_nets( rng, 100, { 3, 2, 5 } );
    int conclusive = 0;
    for ( int i = 0; i < 50; ++i )
    {
        const net& a = nets[2 * i];
        const net& b = nets[2 * i + 1];
        auto v = hd_inclusion( a, b ).result;
        INFO( emit_net( a ) << "--\n" << emit_net( b ) );
        if ( v == outcome::inconclusive )
            continue;
        ++conclusive;
        CHECK( ( v == outcome::eve_wins ) == bounded_included( a, b, 8 ) );
    }
    CHECK( conclusive >= 45 );
}

TEST_CASE( "universality" )
{
    net all = parse_net( "ocn\nalphabet a b\nstate s init final\ntrans s a +1 s\ntrans s b 0 s\n" );
    CHECK( universality( all ).result == outcome::eve_wins );
    net no_b = parse_net( "ocn\nalphabet a b\nstate s init final\ntrans s a 0 s\n" );
    CHECK( universality( no_b ).result == outcome::adam_wins );
    CHECK( universality( load( "balance.ocn" ) ).result == outcome::adam_wins );

    rng_t rng( 19 );
    random_net_options o{ 2, 2, 6 };
    o.final_ratio = 0.8;
    auto nets = random_hd_nets( rng, 30, o );
    int universal = 0;
    for ( const auto& n : nets )
    {
        auto v = universality( n ).result;
        INFO( emit_net( n ) );
        REQUIRE( v != outcome::inconclusive );
        CHECK( ( v == outcome::eve_wins ) == bounded_universal( n, 8 ) );
        universal += v == outcome::eve_wins;
    }
    MESSAGE( universal << " of 30 universal" );
}
