#pragma once

// Reference implementations used only by the tests. They deliberately avoid
// the library's algorithms: plain recursion over runs and bounded searches.

#include "ocn/game.hpp"
#include "ocn/net.hpp"

#include <deque>
#include <functional>
#include <map>
#include <set>

namespace oracle
{

inline bool step_ok( const ocn::transition& t, long k )
{
    if ( t.grd == ocn::guard::zero && k != 0 )
        return false;
    if ( t.grd == ocn::guard::nonzero && k == 0 )
        return false;
    return k + t.delta >= 0;
}

// Depth-first enumeration of every run.
inline bool run_accepts_from( const ocn::net& n, int q, long k, const ocn::word& w, std::size_t i = 0 )
{
    if ( i == w.size() )
        return n.final[q] != 0;
    for ( const auto& t : n.transitions )
        if ( t.src == q && t.letter == w[i] && step_ok( t, k ) && run_accepts_from( n, t.dst, k + t.delta, w, i + 1 ) )
            return true;
    return false;
}

inline bool run_accepts( const ocn::net& n, const ocn::word& w )
{
    return run_accepts_from( n, n.initial, 0, w );
}

// All end configurations, by recursion over runs.
inline void collect_ends( const ocn::net& n, int q, long k, const ocn::word& w, std::size_t i,
                          std::set<ocn::config>& out )
{
    if ( i == w.size() )
    {
        out.insert( { q, k } );
        return;
    }
    for ( const auto& t : n.transitions )
        if ( t.src == q && t.letter == w[i] && step_ok( t, k ) )
            collect_ends( n, t.dst, k + t.delta, w, i + 1, out );
}

// Can some final state be reached from (q,k) with counters kept below bound?
inline bool covers_final( const ocn::net& n, int q, long k, long bound )
{
    std::set<std::pair<int, long>> seen{ { q, k } };
    std::deque<std::pair<int, long>> todo{ { q, k } };
    while ( !todo.empty() )
    {
        auto [p, c] = todo.front();
        todo.pop_front();
        if ( n.final[p] )
            return true;
        for ( const auto& t : n.transitions )
            if ( t.src == p && step_ok( t, c ) && c + t.delta <= bound && seen.insert( { t.dst, c + t.delta } ).second )
                todo.push_back( { t.dst, c + t.delta } );
    }
    return false;
}

inline long bfs_need( const ocn::net& n, int q )
{
    long nq = n.num_states();
    for ( long k = 0; k <= nq; ++k )
        if ( covers_final( n, q, k, nq * nq + k ) )
            return k;
    return ocn::infinite_credit;
}

// Some extension of w of bounded length is accepted.
inline bool live_by_extension( const ocn::net& n, const ocn::word& w, int max_ext )
{
    std::function<bool( ocn::word&, int )> go = [&]( ocn::word& cur, int left ) {
        if ( run_accepts( n, cur ) )
            return true;
        if ( left == 0 )
            return false;
        for ( int a = 0; a < n.num_letters(); ++a )
        {
            cur.push_back( a );
            bool ok = go( cur, left - 1 );
            cur.pop_back();
            if ( ok )
                return true;
        }
        return false;
    };
    ocn::word cur = w;
    return go( cur, max_ext );
}

// Backward induction for |V| rounds on an explicit game.
inline std::vector<char> backward_attractor( const ocn::finite_game& g )
{
    int n = g.size();
    std::vector<char> win( n, 0 );
    for ( int v = 0; v < n; ++v )
        win[v] = g.target[v] || ( g.owner[v] == ocn::player::eve && g.succ[v].empty() );
    for ( int round = 0; round < n; ++round )
    {
        std::vector<char> next = win;
        for ( int v = 0; v < n; ++v )
        {
            if ( win[v] || g.succ[v].empty() )
                continue;
            bool any = false, all = true;
            for ( int w : g.succ[v] )
            {
                any = any || win[w];
                all = all && win[w];
            }
            next[v] = g.owner[v] == ocn::player::adam ? any : all;
        }
        win = next;
    }
    return win;
}

} // namespace oracle
