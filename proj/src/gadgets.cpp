#include "ocn/gadgets.hpp"

#include "ocn/lang_ops.hpp"
#include "ocn/text_format.hpp"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace ocn
{

std::vector<int> unary_afa::successors( int q ) const
{
    std::vector<int> out;
    for ( const auto& [p, r] : edges )
        if ( p == q )
            out.push_back( r );
    return out;
}

void unary_afa::validate() const
{
    if ( final.size() != universal.size() )
        throw input_error( "afa: final and universal flags differ in size" );
    if ( size() == 0 || initial < 0 || initial >= size() )
        throw input_error( "afa: bad initial state" );
    std::set<std::pair<int, int>> seen;
    for ( const auto& [p, q] : edges )
    {
        if ( p < 0 || q < 0 || p >= size() || q >= size() )
            throw input_error( "afa: edge out of range" );
        if ( universal[p] == universal[q] )
            throw input_error( "afa: edges must alternate between existential and universal states" );
        if ( !seen.insert( { p, q } ).second )
            throw input_error( "afa: duplicate edge" );
    }
}

std::string unary_afa::render() const
{
    std::string out;
    for ( int q = 0; q < size(); ++q )
    {
        if ( q )
            out += " ";
        out += ( universal[q] ? "A" : "E" ) + std::to_string( q );
        if ( final[q] )
            out += "*";
        if ( q == initial )
            out += "<";
    }
    out += " |";
    for ( const auto& [p, q] : edges )
        out += " " + std::to_string( p ) + ">" + std::to_string( q );
    return out;
}

unary_afa random_afa( rng_t& rng, int states, double edge_ratio, bool allow_stuck_universal )
{
    if ( states < 1 )
        throw std::invalid_argument( "afa needs a state" );
    std::bernoulli_distribution coin( 0.5 ), fin( 0.3 ), edge( edge_ratio );
    unary_afa a;
    for ( int q = 0; q < states; ++q )
    {
        a.universal.push_back( coin( rng ) );
        a.final.push_back( fin( rng ) );
    }
    for ( int p = 0; p < states; ++p )
        for ( int q = 0; q < states; ++q )
            if ( a.universal[p] != a.universal[q] && edge( rng ) )
                a.edges.push_back( { p, q } );
    if ( !allow_stuck_universal )
        for ( int q = 0; q < states; ++q )
        {
            if ( !a.universal[q] || !a.successors( q ).empty() )
                continue;
            std::vector<int> ex;
            for ( int p = 0; p < states; ++p )
                if ( !a.universal[p] )
                    ex.push_back( p );
            if ( ex.empty() )
            {
                // No edges exist yet, so the flip keeps alternation.
                a.universal[q] = 0;
                continue;
            }
            a.edges.push_back( { q, ex[std::uniform_int_distribution<std::size_t>( 0, ex.size() - 1 )( rng )] } );
        }
    std::sort( a.edges.begin(), a.edges.end() );
    return a;
}

namespace
{

std::vector<char> afa_step( const unary_afa& afa, const std::vector<char>& acc )
{
    std::vector<char> next( afa.size(), 0 );
    for ( int q = 0; q < afa.size(); ++q )
    {
        auto succ = afa.successors( q );
        if ( afa.universal[q] )
            next[q] = std::all_of( succ.begin(), succ.end(), [&]( int p ) { return acc[p] != 0; } );
        else
            next[q] = std::any_of( succ.begin(), succ.end(), [&]( int p ) { return acc[p] != 0; } );
    }
    return next;
}

} // namespace

std::set<long> afa_accept_lengths( const unary_afa& afa, long nmax )
{
    afa.validate();
    std::set<long> out;
    std::vector<char> acc = afa.final;
    for ( long n = 0; n <= nmax; ++n )
    {
        if ( acc[afa.initial] )
            out.insert( n );
        acc = afa_step( afa, acc );
    }
    return out;
}

bool afa_empty( const unary_afa& afa )
{
    afa.validate();
    std::set<std::vector<char>> seen;
    std::vector<char> acc = afa.final;
    while ( seen.insert( acc ).second )
    {
        if ( acc[afa.initial] )
            return false;
        acc = afa_step( afa, acc );
    }
    return true;
}

net afa_to_ocn( const unary_afa& afa )
{
    afa.validate();
    net n;
    n.kind = net_kind::ocn;
    auto name = []( int q ) { return "s" + std::to_string( q ); };
    for ( const char* x : { "$", "heart", "club", "1", "a" } )
        n.add_letter( x );
    for ( int q = 0; q < afa.size(); ++q )
        if ( afa.universal[q] )
            n.add_letter( "a_" + name( q ) );
    for ( int q = 0; q < afa.size(); ++q )
        n.add_state( name( q ), true );
    for ( const char* x : { "qI", "qheart", "qclub", "win1", "win2", "last" } )
        n.add_state( x, true );
    n.initial = n.find_state( "qI" );

    n.add_transition( "qI", "1", 1, "qI" );
    n.add_transition( "qI", "$", 0, name( afa.initial ) );
    for ( int q = 0; q < afa.size(); ++q )
    {
        auto succ = afa.successors( q );
        if ( !afa.universal[q] )
        {
            for ( int p = 0; p < afa.size(); ++p )
            {
                if ( !afa.universal[p] )
                    continue;
                bool edge = std::find( succ.begin(), succ.end(), p ) != succ.end();
                n.add_transition( name( q ), "a_" + name( p ), -1, edge ? name( p ) : "win1" );
            }
            n.add_transition( name( q ), "a", -1, "win1" );
        }
        else
        {
            for ( int p : succ )
                n.add_transition( name( q ), "a", -1, name( p ) );
            for ( int p = 0; p < afa.size(); ++p )
                if ( afa.universal[p] )
                    n.add_transition( name( q ), "a_" + name( p ), -1, "win1" );
        }
        if ( afa.final[q] )
        {
            n.add_transition( name( q ), "$", -1, "win2" );
            n.add_transition( name( q ), "$", 0, "qclub" );
            n.add_transition( name( q ), "$", 0, "qheart" );
        }
        else
            n.add_transition( name( q ), "$", 0, "win2" );
    }
    n.add_transition( "win1", "$", 0, "win2" );
    n.add_transition( "win1", "a", -1, "win1" );
    for ( int p = 0; p < afa.size(); ++p )
        if ( afa.universal[p] )
            n.add_transition( "win1", "a_" + name( p ), -1, "win1" );
    n.add_transition( "qheart", "heart", 0, "last" );
    n.add_transition( "qclub", "club", 0, "last" );
    n.add_transition( "win2", "heart", 0, "last" );
    n.add_transition( "win2", "club", 0, "last" );
    return canonical( n );
}

void socn_game::validate() const
{
    require_valid( arena );
    if ( arena.kind != net_kind::socn || arena.num_letters() != 1 )
        throw input_error( "game arena must be a succinct net over one letter" );
    if ( static_cast<int>( or_owned.size() ) != arena.num_states() )
        throw input_error( "ownership does not cover every state" );
    for ( const auto& t : arena.transitions )
        if ( or_owned[t.src] == or_owned[t.dst] )
            throw input_error( "game moves must alternate between the players" );
}

socn_game random_socn_game( rng_t& rng, int states, int transitions, long max_delta )
{
    if ( states < 2 || max_delta < 1 )
        throw std::invalid_argument( "game needs two states and a positive delta bound" );
    std::bernoulli_distribution fin( 0.3 );
    std::uniform_int_distribution<int> st( 0, states - 1 );
    std::uniform_int_distribution<long> dl( -max_delta, max_delta );
    socn_game g;
    g.arena.kind = net_kind::socn;
    g.arena.add_letter( "a" );
    for ( int q = 0; q < states; ++q )
    {
        g.arena.add_state( "g" + std::to_string( q ), fin( rng ) );
        g.or_owned.push_back( q % 2 == 0 );
    }
    std::shuffle( g.or_owned.begin(), g.or_owned.end(), rng );
    std::set<std::tuple<int, long, int>> seen;
    for ( int tries = 0; static_cast<int>( seen.size() ) < transitions && tries < 50 * transitions; ++tries )
    {
        int p = st( rng ), q = st( rng );
        long d = dl( rng );
        if ( g.or_owned[p] == g.or_owned[q] || !seen.insert( { p, d, q } ).second )
            continue;
        g.arena.add_transition( p, 0, d, q );
    }
    std::sort( g.arena.transitions.begin(), g.arena.transitions.end() );
    return g;
}

const char* to_string( socn_winner w )
{
    switch ( w )
    {
    case socn_winner::or_wins: return "or-wins";
    case socn_winner::and_wins: return "and-wins";
    default: return "unknown";
    }
}

namespace
{

// Attractor for "or" on counters 0..cap. Moves past the cap either lose for
// "or" (optimistic = false) or win when a final state is still reachable.
std::vector<char> or_attractor( const socn_game& g, long cap, int rounds, bool optimistic )
{
    const net& n = g.arena;
    int nq = n.num_states();
    std::vector<char> can_final( nq, 0 );
    for ( int q = 0; q < nq; ++q )
        can_final[q] = n.is_final( q );
    for ( bool changed = true; changed; )
    {
        changed = false;
        for ( const auto& t : n.transitions )
            if ( can_final[t.dst] && !can_final[t.src] )
                can_final[t.src] = changed = true;
    }

    auto idx = [&]( int q, long k ) { return static_cast<std::size_t>( q ) * ( cap + 1 ) + k; };
    std::vector<char> win( static_cast<std::size_t>( nq ) * ( cap + 1 ), 0 );
    for ( int q = 0; q < nq; ++q )
        if ( n.is_final( q ) )
            win[idx( q, 0 )] = 1;

    // 1 = or wins, 0 = or loses, -1 = decided by the current attractor.
    auto move_value = [&]( const transition& t, long k, std::size_t& at ) -> int {
        long to = k + t.delta;
        if ( to < 0 )
            return g.or_owned[t.src] ? -2 : 0;
        if ( to > cap )
            return optimistic && can_final[t.dst] ? 1 : 0;
        at = idx( t.dst, to );
        return -1;
    };

    for ( int r = 0; r < rounds; ++r )
    {
        std::vector<char> next = win;
        bool changed = false;
        for ( int q = 0; q < nq; ++q )
            for ( long k = 0; k <= cap; ++k )
            {
                if ( win[idx( q, k )] )
                    continue;
                bool any = false, all = true, moved = false;
                for ( const auto& t : n.transitions )
                {
                    if ( t.src != q )
                        continue;
                    std::size_t at = 0;
                    int v = move_value( t, k, at );
                    if ( v == -2 )
                        continue;
                    moved = true;
                    bool w = v == -1 ? win[at] != 0 : v == 1;
                    any = any || w;
                    all = all && w;
                }
                bool now = g.or_owned[q] ? any : moved && all;
                if ( now )
                {
                    next[idx( q, k )] = 1;
                    changed = true;
                }
            }
        win = std::move( next );
        if ( !changed )
            break;
    }
    return win;
}

} // namespace

socn_winner socn_solve_bounded( const socn_game& g, long cap, int depth )
{
    g.validate();
    if ( cap < 0 || depth < 0 )
        throw std::invalid_argument( "cap and depth must be non-negative" );
    std::size_t start = static_cast<std::size_t>( g.arena.initial ) * ( cap + 1 );
    if ( or_attractor( g, cap, depth, false )[start] )
        return socn_winner::or_wins;
    long states = g.arena.num_states() * ( cap + 1 );
    if ( !or_attractor( g, cap, static_cast<int>( states ) + 1, true )[start] )
        return socn_winner::and_wins;
    return socn_winner::unknown;
}

net socn_to_ocn( const socn_game& g )
{
    g.validate();
    const net& a = g.arena;
    net n;
    n.kind = net_kind::socn;
    for ( const char* x : { "$", "heart", "club", "a" } )
        n.add_letter( x );
    int nt = static_cast<int>( a.transitions.size() );
    auto letter = []( int i ) { return "t" + std::to_string( i ); };
    for ( int i = 0; i < nt; ++i )
        n.add_letter( letter( i ) );

    auto main = [&]( int q ) { return "m." + a.state_names[q]; };
    auto resolve = [&]( int i ) { return "r." + a.state_names[a.transitions[i].src] + "." + std::to_string( i ); };
    auto win = [&]( int q ) { return "w." + a.state_names[q]; };
    auto twin = [&]( int q ) { return "t." + a.state_names[q]; };

    for ( int q = 0; q < a.num_states(); ++q )
    {
        n.add_state( main( q ), true );
        n.add_state( win( q ), true );
        if ( !g.or_owned[q] )
            n.add_state( twin( q ), true );
    }
    for ( int i = 0; i < nt; ++i )
        if ( !g.or_owned[a.transitions[i].src] )
            n.add_state( resolve( i ), true );
    for ( const char* x : { "w.$", "s.heart", "s.club", "s.last" } )
        n.add_state( x, true );
    n.initial = n.find_state( main( a.initial ) );

    for ( int i = 0; i < nt; ++i )
    {
        const auto& t = a.transitions[i];
        if ( g.or_owned[t.src] )
        {
            n.add_transition( main( t.src ), letter( i ), t.delta, main( t.dst ) );
            n.add_transition( win( t.src ), letter( i ), t.delta, win( t.dst ) );
            continue;
        }
        n.add_transition( main( t.src ), "a", 0, resolve( i ) );
        n.add_transition( resolve( i ), letter( i ), t.delta, main( t.dst ) );
        for ( int j = 0; j < nt; ++j )
        {
            const auto& u = a.transitions[j];
            if ( j != i && u.src == t.src )
                n.add_transition( resolve( i ), letter( j ), u.delta, win( u.dst ) );
        }
        n.add_transition( twin( t.src ), letter( i ), t.delta, win( t.dst ) );
    }
    for ( int q = 0; q < a.num_states(); ++q )
    {
        if ( a.is_final( q ) )
        {
            n.add_transition( main( q ), "$", -1, "w.$" );
            n.add_transition( main( q ), "$", 0, "s.club" );
            n.add_transition( main( q ), "$", 0, "s.heart" );
        }
        else
            n.add_transition( main( q ), "$", 0, "w.$" );
        if ( !g.or_owned[q] )
            n.add_transition( win( q ), "a", 0, twin( q ) );
        n.add_transition( win( q ), "$", 0, "w.$" );
    }
    n.add_transition( "s.heart", "heart", 0, "s.last" );
    n.add_transition( "s.club", "club", 0, "s.last" );
    n.add_transition( "w.$", "heart", 0, "s.last" );
    n.add_transition( "w.$", "club", 0, "s.last" );
    return canonical( n );
}

net doca_inclusion_to_oca( const net& a, const net& b )
{
    for ( const net* x : { &a, &b } )
    {
        require_valid( *x );
        if ( x->kind != net_kind::oca || !is_deterministic( *x ) )
            throw input_error( "inclusion reduction needs deterministic one-counter automata" );
        if ( x->find_letter( heart_letter ) >= 0 || x->find_letter( cat_letter ) >= 0 )
            throw input_error( "input uses a reserved letter" );
    }
    if ( a.letter_names != b.letter_names )
        throw input_error( "inclusion needs both automata over the same alphabet" );

    net n;
    n.kind = net_kind::oca;
    n.letter_names = a.letter_names;
    int cat = n.add_letter( cat_letter );
    int heart = n.add_letter( heart_letter );
    int start = n.add_state( "start" );
    n.initial = start;
    auto embed = [&]( const net& x, const std::string& prefix ) {
        int base = n.num_states();
        for ( int q = 0; q < x.num_states(); ++q )
            n.add_state( prefix + x.state_names[q], x.is_final( q ) );
        for ( const auto& t : x.transitions )
            n.add_transition( base + t.src, t.letter, t.delta, base + t.dst, t.grd );
        return base;
    };
    int a0 = embed( a, "A." ) + a.initial;
    int bbase = embed( b, "B." );
    int b0 = bbase + b.initial;
    bool reentered = std::any_of( b.transitions.begin(), b.transitions.end(),
                                  [&]( const transition& t ) { return t.dst == b.initial; } );
    if ( reentered )
    {
        int fresh = n.add_state( "B.init", b.is_final( b.initial ) );
        for ( const auto& t : b.transitions )
            if ( t.src == b.initial )
                n.add_transition( fresh, t.letter, t.delta, bbase + t.dst, t.grd );
        b0 = fresh;
    }
    int star = n.add_state( "B.star", true );
    n.add_transition( b0, cat, 0, star, guard::zero );
    n.add_transition( b0, cat, 0, star, guard::nonzero );
    n.add_transition( start, heart, 0, a0, guard::zero );
    n.add_transition( start, heart, 0, b0, guard::zero );
    return n;
}

net random_doca( rng_t& rng, int states, int letters )
{
    if ( states < 1 || letters < 1 || letters > 26 )
        throw std::invalid_argument( "bad automaton size" );
    std::bernoulli_distribution fin( 0.4 ), present( 0.8 );
    std::uniform_int_distribution<int> st( 0, states - 1 );
    std::uniform_int_distribution<long> dl( -1, 1 ), up( 0, 1 );
    net n;
    n.kind = net_kind::oca;
    for ( int a = 0; a < letters; ++a )
        n.add_letter( std::string( 1, static_cast<char>( 'a' + a ) ) );
    for ( int q = 0; q < states; ++q )
        n.add_state( "q" + std::to_string( q ), fin( rng ) );
    for ( int q = 0; q < states; ++q )
        for ( guard g : { guard::zero, guard::nonzero } )
            for ( int a = 0; a < letters; ++a )
                if ( present( rng ) )
                    n.add_transition( q, a, g == guard::zero ? up( rng ) : dl( rng ), st( rng ), g );
    return n;
}

std::optional<word> bounded_inclusion_counterexample( const net& a, const net& b, int max_len )
{
    if ( a.letter_names != b.letter_names )
        throw input_error( "inclusion needs both automata over the same alphabet" );
    adjacency adj_a( a ), adj_b( b );
    auto accepting = []( const net& n, const config_set& s ) {
        return std::any_of( s.begin(), s.end(), [&]( const config& c ) { return n.is_final( c.state ); } );
    };
    struct entry
    {
        word w;
        config_set sa, sb;
    };
    std::vector<entry> level{ { {}, { { a.initial, 0 } }, { { b.initial, 0 } } } };
    for ( int len = 0; len <= max_len && !level.empty(); ++len )
    {
        for ( const auto& e : level )
            if ( accepting( a, e.sa ) && !accepting( b, e.sb ) )
                return e.w;
        if ( len == max_len )
            break;
        std::vector<entry> next;
        for ( const auto& e : level )
            for ( int x = 0; x < a.num_letters(); ++x )
            {
                entry f{ e.w, post( a, adj_a, e.sa, x ), post( b, adj_b, e.sb, x ) };
                if ( f.sa.empty() )
                    continue;
                f.w.push_back( x );
                next.push_back( std::move( f ) );
            }
        level = std::move( next );
    }
    return std::nullopt;
}

namespace
{

std::vector<corpus_entry> write_corpus( const std::string& dir, int count,
                                        const std::function<bool( int, corpus_entry&, std::string& )>& make )
{
    std::filesystem::create_directories( dir );
    std::vector<corpus_entry> out;
    std::ofstream manifest( dir + "/manifest.txt" );
    if ( !manifest )
        throw input_error( "cannot write " + dir + "/manifest.txt" );
    manifest << "# path label oracle bounds\n";
    for ( int i = 0; static_cast<int>( out.size() ) < count; ++i )
    {
        if ( i > 100 * count + 100 )
            throw std::runtime_error( "too many inconclusive instances" );
        corpus_entry e;
        std::string text;
        if ( !make( i, e, text ) )
            continue;
        std::ofstream f( dir + "/" + e.path );
        if ( !f )
            throw input_error( "cannot write " + dir + "/" + e.path );
        f << text;
        manifest << e.path << " " << e.label << " " << e.oracle << " " << e.bounds << "\n";
        out.push_back( e );
    }
    return out;
}

} // namespace

std::vector<corpus_entry> write_afa_corpus( const std::string& dir, unsigned seed, int count )
{
    rng_t rng( seed );
    return write_corpus( dir, count, [&]( int i, corpus_entry& e, std::string& text ) {
        unary_afa afa = random_afa( rng, 1 + i % 4 );
        bool empty = afa_empty( afa );
        e = { "afa_" + std::to_string( i ) + ".ocn", empty ? "hd" : "not-hd", "afa_empty", "exact" };
        text = "# unary afa: " + afa.render() + "\n# language " + ( empty ? "empty" : "nonempty" ) + "\n" +
               emit_net( afa_to_ocn( afa ) );
        return true;
    } );
}

std::vector<corpus_entry> write_socn_corpus( const std::string& dir, unsigned seed, int count )
{
    rng_t rng( seed );
    const long cap = 16;
    const int depth = 40;
    return write_corpus( dir, count, [&]( int i, corpus_entry& e, std::string& text ) {
        socn_game g = random_socn_game( rng, 3 + i % 3, 5 + i % 4, 3 );
        auto w = socn_solve_bounded( g, cap, depth );
        if ( w == socn_winner::unknown )
            return false;
        e = { "socn_" + std::to_string( i ) + ".ocn", w == socn_winner::and_wins ? "hd" : "not-hd",
              "socn_solve_bounded", "cap=" + std::to_string( cap ) + ",depth=" + std::to_string( depth ) };
        std::string owners;
        for ( int q = 0; q < g.arena.num_states(); ++q )
            owners += " " + g.arena.state_names[q] + ( g.or_owned[q] ? ":or" : ":and" );
        text = "# game owners:" + owners + "\n# game winner " + to_string( w ) + "\n";
        for ( const auto& t : g.arena.transitions )
            text += "# game move " + g.arena.render( t ) + "\n";
        text += emit_net( socn_to_ocn( g ) );
        return true;
    } );
}

std::vector<corpus_entry> write_doca_corpus( const std::string& dir, unsigned seed, int count )
{
    rng_t rng( seed );
    const int len = 8;
    return write_corpus( dir, count, [&]( int i, corpus_entry& e, std::string& text ) {
        net a = random_doca( rng, 2 + i % 2, 2 );
        net b = random_doca( rng, 2 + i % 2, 2 );
        auto cex = bounded_inclusion_counterexample( a, b, len );
        e = { "doca_" + std::to_string( i ) + ".oca", cex ? "not-inclusion" : "inclusion", "bounded_words",
              "len=" + std::to_string( len ) };
        text = "# first automaton\n";
        std::istringstream sa( emit_net( a ) ), sb( emit_net( b ) );
        for ( std::string line; std::getline( sa, line ); )
            text += "#   " + line + "\n";
        text += "# second automaton\n";
        for ( std::string line; std::getline( sb, line ); )
            text += "#   " + line + "\n";
        if ( cex )
            text += "# counterexample '" + a.render( *cex ) + "'\n";
        text += emit_net( doca_inclusion_to_oca( a, b ) );
        return true;
    } );
}

} // namespace ocn
