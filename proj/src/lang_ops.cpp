#include "ocn/lang_ops.hpp"

#include "ocn/hd.hpp"
#include "ocn/sim.hpp"

#include <algorithm>

namespace ocn
{

namespace
{

void require_fresh_letter( const net& n, const std::string& letter )
{
    if ( n.find_letter( letter ) >= 0 )
        throw input_error( "net already uses the reserved letter " + letter );
}

std::string fresh_state( const net& n, const std::string& base )
{
    std::string name = base;
    for ( int i = 1; n.find_state( name ) >= 0; ++i )
        name = base + std::to_string( i );
    return name;
}

// Copies n's states and transitions into out under a name prefix; letters
// are matched by name.
int embed( net& out, const net& n, const std::string& prefix )
{
    int base = out.num_states();
    for ( int q = 0; q < n.num_states(); ++q )
        out.add_state( prefix + n.state_names[q], n.is_final( q ) );
    for ( const auto& t : n.transitions )
        out.add_transition( base + t.src, out.find_letter( n.letter_names[t.letter] ), t.delta, base + t.dst, t.grd );
    return base;
}

capped_verdict check_hd_input( const net& n, const std::string& which, const std::vector<long>& caps )
{
    auto v = is_history_deterministic( n, caps.empty() ? hd_caps( n ) : caps );
    if ( v.result == outcome::adam_wins )
    {
        auto w = letter_game_refuter( n, 8, 10 );
        throw not_hd_error( which, w ? render_witness( n, *w ) : std::string() );
    }
    return v;
}

} // namespace

not_hd_error::not_hd_error( const std::string& w, std::string wit )
    : input_error( w + " is not history-deterministic" ), which( w ), witness( std::move( wit ) )
{
}

net augment_with_cat( const net& b )
{
    require_valid( b );
    require_fresh_letter( b, cat_letter );
    net out = b;
    int cat = out.add_letter( cat_letter );
    // The cat word must only be readable at the very start.
    bool reentered = std::any_of( b.transitions.begin(), b.transitions.end(),
                                  [&]( const transition& t ) { return t.dst == b.initial; } );
    if ( reentered )
    {
        int fresh = out.add_state( fresh_state( b, "__init" ), b.is_final( b.initial ) );
        for ( const auto& t : b.transitions )
            if ( t.src == b.initial )
                out.add_transition( fresh, t.letter, t.delta, t.dst, t.grd );
        out.initial = fresh;
    }
    int star = out.add_state( fresh_state( b, "__star" ), true );
    out.add_transition( out.initial, cat, 0, star );
    return out;
}

net inclusion_gadget( const net& a, const net& b )
{
    require_valid( a );
    require_valid( b );
    if ( a.letter_names != b.letter_names )
        throw input_error( "inclusion needs both nets over the same alphabet" );
    if ( a.kind == net_kind::oca || b.kind == net_kind::oca )
        throw input_error( "inclusion is defined for nets without zero tests" );
    require_fresh_letter( a, heart_letter );
    require_fresh_letter( b, heart_letter );
    net bc = augment_with_cat( b );

    net g;
    g.kind = a.kind == net_kind::socn || b.kind == net_kind::socn ? net_kind::socn : net_kind::ocn;
    g.letter_names = bc.letter_names;
    int heart = g.add_letter( heart_letter );
    g.initial = g.add_state( "start" );
    int a0 = embed( g, a, "A." ) + a.initial;
    int b0 = embed( g, bc, "B." ) + bc.initial;
    g.add_transition( g.initial, heart, 0, a0 );
    g.add_transition( g.initial, heart, 0, b0 );
    return g;
}

capped_verdict hd_inclusion( const net& a, const net& b, const std::vector<long>& caps )
{
    auto va = check_hd_input( a, "first net", caps );
    auto vb = check_hd_input( b, "second net", caps );
    net g = inclusion_gadget( a, b );
    auto v = is_history_deterministic( g, caps.empty() ? hd_caps( g ) : caps );
    // An unconfirmed precondition leaves a positive answer unconfirmed too.
    if ( v.result == outcome::eve_wins &&
         ( va.result == outcome::inconclusive || vb.result == outcome::inconclusive ) )
        v.result = outcome::inconclusive;
    return v;
}

capped_verdict hd_equivalence( const net& a, const net& b, const std::vector<long>& caps )
{
    auto ab = hd_inclusion( a, b, caps );
    if ( ab.result == outcome::adam_wins )
        return ab;
    auto ba = hd_inclusion( b, a, caps );
    if ( ba.result != outcome::eve_wins )
        return ba;
    return ab;
}

net universal_automaton( const std::vector<std::string>& letters )
{
    net u;
    u.letter_names = letters;
    u.initial = u.add_state( "u", true );
    for ( int x = 0; x < u.num_letters(); ++x )
        u.add_transition( 0, x, 0, 0 );
    return u;
}

capped_verdict universality( const net& n, const std::vector<long>& caps )
{
    require_valid( n );
    net u = universal_automaton( n.letter_names );
    return simulates( { &u, { 0, 0 }, &n, { n.initial, 0 } }, caps.empty() ? sim_caps( u, n ) : caps );
}

} // namespace ocn
