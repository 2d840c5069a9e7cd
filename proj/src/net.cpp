#include "ocn/net.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <tuple>

namespace ocn
{

namespace
{

bool is_epsilon_name( const std::string& name )
{
    return name.empty() || name == "eps" || name == "epsilon" || name == "\xCE\xB5";
}

std::string delta_text( long d )
{
    if ( d > 0 )
        return "+" + std::to_string( d );
    return std::to_string( d );
}

const char* guard_text( guard g )
{
    switch ( g )
    {
    case guard::zero: return "zero";
    case guard::nonzero: return "nonzero";
    default: return "";
    }
}

std::string name_or_index( const std::vector<std::string>& names, int i )
{
    if ( i >= 0 && i < static_cast<int>( names.size() ) )
        return names[i];
    return "#" + std::to_string( i );
}

} // namespace

int net::find_state( const std::string& name ) const
{
    auto it = std::find( state_names.begin(), state_names.end(), name );
    return it == state_names.end() ? -1 : static_cast<int>( it - state_names.begin() );
}

int net::find_letter( const std::string& name ) const
{
    auto it = std::find( letter_names.begin(), letter_names.end(), name );
    return it == letter_names.end() ? -1 : static_cast<int>( it - letter_names.begin() );
}

int net::add_state( const std::string& name, bool is_final )
{
    if ( find_state( name ) >= 0 )
        throw input_error( "duplicate state '" + name + "'" );
    state_names.push_back( name );
    final.push_back( is_final ? 1 : 0 );
    return num_states() - 1;
}

int net::add_letter( const std::string& name )
{
    if ( find_letter( name ) >= 0 )
        throw input_error( "duplicate letter '" + name + "'" );
    letter_names.push_back( name );
    return num_letters() - 1;
}

int net::state_or_add( const std::string& name )
{
    int q = find_state( name );
    return q >= 0 ? q : add_state( name );
}

int net::letter_or_add( const std::string& name )
{
    int a = find_letter( name );
    return a >= 0 ? a : add_letter( name );
}

void net::add_transition( int src, int letter, long delta, int dst, guard g )
{
    transitions.push_back( { src, letter, delta, dst, g } );
}

void net::add_transition( const std::string& src, const std::string& letter, long delta,
                          const std::string& dst, guard g )
{
    int s = find_state( src ), d = find_state( dst ), a = find_letter( letter );
    if ( s < 0 || d < 0 )
        throw input_error( "transition uses undeclared state" );
    if ( a < 0 )
        throw input_error( "transition uses unknown letter '" + letter + "'" );
    add_transition( s, a, delta, d, g );
}

std::string net::render( const transition& t ) const
{
    std::string out = name_or_index( state_names, t.src ) + " ";
    if ( kind == net_kind::oca )
        out += std::string( guard_text( t.grd ) ) + " ";
    out += name_or_index( letter_names, t.letter ) + " " + delta_text( t.delta ) + " " +
           name_or_index( state_names, t.dst );
    return out;
}

std::string net::render( const word& w ) const
{
    std::string out;
    for ( std::size_t i = 0; i < w.size(); ++i )
    {
        if ( i )
            out += ' ';
        out += name_or_index( letter_names, w[i] );
    }
    return out;
}

std::string net::render( const config& c ) const
{
    return "(" + name_or_index( state_names, c.state ) + "," + std::to_string( c.counter ) + ")";
}

word net::parse_word( const std::string& text ) const
{
    word w;
    bool split = text.find_first_of( " \t," ) != std::string::npos;
    if ( !split && !text.empty() && find_letter( text ) >= 0 )
        return { find_letter( text ) };
    if ( split )
    {
        std::string tok;
        std::istringstream in( text );
        std::string chunk;
        while ( in >> chunk )
        {
            std::istringstream parts( chunk );
            while ( std::getline( parts, tok, ',' ) )
            {
                if ( tok.empty() )
                    continue;
                int a = find_letter( tok );
                if ( a < 0 )
                    throw input_error( "unknown letter '" + tok + "' in word" );
                w.push_back( a );
            }
        }
        return w;
    }
    for ( char ch : text )
    {
        int a = find_letter( std::string( 1, ch ) );
        if ( a < 0 )
            throw input_error( std::string( "unknown letter '" ) + ch + "' in word" );
        w.push_back( a );
    }
    return w;
}

int net::find_transition( const std::string& rendered ) const
{
    std::istringstream in( rendered );
    std::string tok, norm;
    while ( in >> tok )
    {
        if ( tok.size() > 1 && tok[0] == '+' )
            tok = tok.substr( 1 );
        norm += ( norm.empty() ? "" : " " ) + tok;
    }
    for ( std::size_t i = 0; i < transitions.size(); ++i )
    {
        std::istringstream rin( render( transitions[i] ) );
        std::string mine;
        while ( rin >> tok )
        {
            if ( tok.size() > 1 && tok[0] == '+' )
                tok = tok.substr( 1 );
            mine += ( mine.empty() ? "" : " " ) + tok;
        }
        if ( mine == norm )
            return static_cast<int>( i );
    }
    return -1;
}

adjacency::adjacency( const net& n )
    : _letters( static_cast<std::size_t>( std::max( 1, n.num_letters() ) ) ),
      _out( static_cast<std::size_t>( n.num_states() ) * _letters )
{
    for ( std::size_t i = 0; i < n.transitions.size(); ++i )
    {
        const auto& t = n.transitions[i];
        _out[static_cast<std::size_t>( t.src ) * _letters + t.letter].push_back( static_cast<int>( i ) );
    }
}

std::vector<std::string> validate_net( const net& n )
{
    std::vector<std::string> bad;
    int ns = n.num_states(), nl = n.num_letters();

    if ( ns == 0 )
        bad.push_back( "net has no states" );
    if ( n.initial < 0 || n.initial >= ns )
        bad.push_back( "initial state is not declared" );
    if ( static_cast<int>( n.final.size() ) != ns )
        bad.push_back( "final flags do not match the state list" );

    std::set<std::string> seen;
    for ( const auto& s : n.state_names )
        if ( !seen.insert( s ).second )
            bad.push_back( "duplicate state '" + s + "'" );
    seen.clear();
    for ( const auto& a : n.letter_names )
    {
        if ( !seen.insert( a ).second )
            bad.push_back( "duplicate letter '" + a + "'" );
        if ( is_epsilon_name( a ) )
            bad.push_back( "epsilon letter '" + a + "' is not allowed" );
    }

    for ( const auto& t : n.transitions )
    {
        std::string r = n.render( t );
        if ( t.src < 0 || t.src >= ns )
            bad.push_back( "transition '" + r + "' leaves an undeclared state" );
        if ( t.dst < 0 || t.dst >= ns )
            bad.push_back( "transition '" + r + "' targets an undeclared state" );
        if ( t.letter < 0 || t.letter >= nl )
            bad.push_back( "transition '" + r + "' reads an unknown letter" );
        if ( n.kind != net_kind::socn && ( t.delta < -1 || t.delta > 1 ) )
            bad.push_back( "transition '" + r + "' has a non-unary delta" );
        if ( n.kind == net_kind::oca )
        {
            if ( t.grd == guard::none )
                bad.push_back( "transition '" + r + "' lacks a guard" );
            if ( t.grd == guard::zero && t.delta < 0 )
                bad.push_back( "transition '" + r + "' decrements under a zero guard" );
        }
        else if ( t.grd != guard::none )
            bad.push_back( "transition '" + r + "' carries a guard outside an oca" );
    }
    return bad;
}

void require_valid( const net& n )
{
    auto bad = validate_net( n );
    if ( !bad.empty() )
        throw input_error( bad.front() );
}

bool is_unary( const net& n )
{
    return std::all_of( n.transitions.begin(), n.transitions.end(),
                        []( const transition& t ) { return t.delta >= -1 && t.delta <= 1; } );
}

namespace
{

// A (state, letter) pair is covered at every counter when some transition on it
// never blocks.
std::vector<char> covered_pairs( const net& n )
{
    std::vector<char> cov( static_cast<std::size_t>( n.num_states() ) * n.num_letters(), 0 );
    if ( n.kind != net_kind::oca )
    {
        for ( const auto& t : n.transitions )
            if ( t.delta >= 0 )
                cov[static_cast<std::size_t>( t.src ) * n.num_letters() + t.letter] = 1;
        return cov;
    }
    std::vector<char> z( cov.size(), 0 ), nz( cov.size(), 0 );
    for ( const auto& t : n.transitions )
    {
        std::size_t i = static_cast<std::size_t>( t.src ) * n.num_letters() + t.letter;
        if ( t.grd == guard::zero )
            z[i] = 1;
        else if ( t.delta >= -1 )
            nz[i] = 1;
    }
    for ( std::size_t i = 0; i < cov.size(); ++i )
        cov[i] = z[i] && nz[i];
    return cov;
}

} // namespace

bool is_complete( const net& n )
{
    auto cov = covered_pairs( n );
    return std::all_of( cov.begin(), cov.end(), []( char c ) { return c != 0; } );
}

bool is_deterministic( const net& n )
{
    std::set<std::tuple<int, int, int>> seen;
    for ( const auto& t : n.transitions )
        if ( !seen.insert( { t.src, static_cast<int>( t.grd ), t.letter } ).second )
            return false;
    if ( n.kind != net_kind::oca )
        return true;
    // An unguarded pair would overlap both guarded ones; oca never has those.
    return true;
}

net complete( const net& n )
{
    if ( is_complete( n ) )
        return n;
    net out = n;
    std::string sink = "__sink";
    for ( int i = 1; out.find_state( sink ) >= 0; ++i )
        sink = "__sink" + std::to_string( i );
    int s = out.add_state( sink, false );
    int nl = n.num_letters();
    if ( n.kind != net_kind::oca )
    {
        auto cov = covered_pairs( n );
        for ( int q = 0; q < n.num_states(); ++q )
            for ( int a = 0; a < nl; ++a )
                if ( !cov[static_cast<std::size_t>( q ) * nl + a] )
                    out.add_transition( q, a, 0, s );
        for ( int a = 0; a < nl; ++a )
            out.add_transition( s, a, 0, s );
        return out;
    }
    std::vector<char> z( static_cast<std::size_t>( n.num_states() ) * nl, 0 ), nz( z.size(), 0 );
    for ( const auto& t : n.transitions )
    {
        std::size_t i = static_cast<std::size_t>( t.src ) * nl + t.letter;
        ( t.grd == guard::zero ? z : nz )[i] = 1;
    }
    for ( int q = 0; q < n.num_states(); ++q )
        for ( int a = 0; a < nl; ++a )
        {
            std::size_t i = static_cast<std::size_t>( q ) * nl + a;
            if ( !z[i] )
                out.add_transition( q, a, 0, s, guard::zero );
            if ( !nz[i] )
                out.add_transition( q, a, 0, s, guard::nonzero );
        }
    for ( int a = 0; a < nl; ++a )
    {
        out.add_transition( s, a, 0, s, guard::zero );
        out.add_transition( s, a, 0, s, guard::nonzero );
    }
    return out;
}

bool enabled( const transition& t, long counter )
{
    if ( counter + t.delta < 0 )
        return false;
    if ( t.grd == guard::zero )
        return counter == 0;
    if ( t.grd == guard::nonzero )
        return counter > 0;
    return true;
}

std::vector<config> successors( const net& n, const adjacency& adj, const config& c, int letter )
{
    std::vector<config> out;
    for ( int i : adj.out( c.state, letter ) )
    {
        const auto& t = n.transitions[i];
        if ( enabled( t, c.counter ) )
            out.push_back( { t.dst, c.counter + t.delta } );
    }
    std::sort( out.begin(), out.end() );
    out.erase( std::unique( out.begin(), out.end() ), out.end() );
    return out;
}

std::vector<config> successors( const net& n, const config& c, int letter )
{
    return successors( n, adjacency( n ), c, letter );
}

config_set post( const net& n, const adjacency& adj, const config_set& cs, int letter )
{
    config_set out;
    for ( const auto& c : cs )
        for ( int i : adj.out( c.state, letter ) )
        {
            const auto& t = n.transitions[i];
            if ( enabled( t, c.counter ) )
                out.insert( { t.dst, c.counter + t.delta } );
        }
    return out;
}

config_set reach_set_from( const net& n, const config_set& start, const word& w )
{
    adjacency adj( n );
    config_set cur = start;
    for ( int a : w )
    {
        cur = post( n, adj, cur, a );
        if ( cur.empty() )
            break;
    }
    return cur;
}

config_set reach_set( const net& n, const word& w )
{
    return reach_set_from( n, { { n.initial, 0 } }, w );
}

bool accepts_from( const net& n, const config& c, const word& w )
{
    auto rs = reach_set_from( n, { c }, w );
    return std::any_of( rs.begin(), rs.end(), [&]( const config& x ) { return n.is_final( x.state ); } );
}

bool accepts( const net& n, const word& w )
{
    return accepts_from( n, { n.initial, 0 }, w );
}

std::vector<long> min_credit( const net& n )
{
    std::vector<long> need( n.num_states(), infinite_credit );
    for ( int q = 0; q < n.num_states(); ++q )
        if ( n.is_final( q ) )
            need[q] = 0;
    bool changed = true;
    while ( changed )
    {
        changed = false;
        for ( const auto& t : n.transitions )
        {
            if ( need[t.dst] == infinite_credit )
                continue;
            long cand = std::max( need[t.dst] - t.delta, t.delta < 0 ? -t.delta : 0L );
            if ( cand < need[t.src] )
            {
                need[t.src] = cand;
                changed = true;
            }
        }
    }
    return need;
}

liveness::liveness( const net& n ) : _net( &n )
{
    if ( n.kind == net_kind::oca )
        _oca_slack = static_cast<long>( n.num_states() ) * n.num_states() + n.num_states() + 1;
    else
        _need = min_credit( n );
}

bool liveness::live( const config& c ) const
{
    if ( _net->kind != net_kind::oca )
        return _need[c.state] != infinite_credit && c.counter >= _need[c.state];

    // Bounded search; runs to a final state need not climb more than the slack.
    long bound = c.counter + _oca_slack;
    std::set<config> seen{ c };
    std::deque<config> todo{ c };
    while ( !todo.empty() )
    {
        config cur = todo.front();
        todo.pop_front();
        if ( _net->is_final( cur.state ) )
            return true;
        for ( const auto& t : _net->transitions )
        {
            if ( t.src != cur.state || !enabled( t, cur.counter ) )
                continue;
            config nxt{ t.dst, cur.counter + t.delta };
            if ( nxt.counter > bound )
                continue;
            if ( seen.insert( nxt ).second )
                todo.push_back( nxt );
        }
    }
    return false;
}

bool liveness::any_live( const config_set& cs ) const
{
    return std::any_of( cs.begin(), cs.end(), [&]( const config& c ) { return live( c ); } );
}

bool is_live_prefix( const net& n, const word& w )
{
    liveness lv( n );
    return lv.any_live( reach_set( n, w ) );
}

step_expansion expand_binary( const net& n, long limit )
{
    step_expansion e{ n, {} };
    for ( const auto& t : n.transitions )
    {
        if ( t.delta > limit || t.delta < -limit )
            throw input_error( "delta " + std::to_string( t.delta ) + " exceeds the expansion limit" );
        int unit = t.delta > 0 ? 1 : -1;
        e.unit_steps.emplace_back( static_cast<std::size_t>( t.delta > 0 ? t.delta : -t.delta ), unit );
    }
    if ( is_unary( n ) && n.kind == net_kind::socn )
        e.source.kind = net_kind::ocn;
    return e;
}

bool accepts_stepwise( const step_expansion& e, const word& w )
{
    const net& n = e.source;
    adjacency adj( n );
    config_set cur{ { n.initial, 0 } };
    for ( int a : w )
    {
        config_set nxt;
        for ( const auto& c : cur )
            for ( int i : adj.out( c.state, a ) )
            {
                const auto& t = n.transitions[i];
                if ( t.grd == guard::zero && c.counter != 0 )
                    continue;
                if ( t.grd == guard::nonzero && c.counter == 0 )
                    continue;
                long k = c.counter;
                bool ok = true;
                for ( int s : e.unit_steps[i] )
                {
                    k += s;
                    if ( k < 0 )
                    {
                        ok = false;
                        break;
                    }
                }
                if ( ok )
                    nxt.insert( { t.dst, k } );
            }
        cur = std::move( nxt );
    }
    return std::any_of( cur.begin(), cur.end(), [&]( const config& c ) { return n.is_final( c.state ); } );
}

} // namespace ocn
