#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ocn
{

enum class net_kind { ocn, oca, socn };

// Only meaningful for oca; plain nets use guard::none everywhere.
enum class guard { none, zero, nonzero };

struct transition
{
    int src = 0;
    int letter = 0;
    long delta = 0;
    int dst = 0;
    guard grd = guard::none;

    auto operator<=>( const transition& ) const = default;
};

struct config
{
    int state = 0;
    long counter = 0;

    auto operator<=>( const config& ) const = default;
};

using word = std::vector<int>;
using config_set = std::set<config>;

constexpr long infinite_credit = std::numeric_limits<long>::max();

class input_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Letters introduced by reductions live under this prefix.
inline bool is_reserved_letter( const std::string& name )
{
    return name.rfind( "__", 0 ) == 0;
}

struct net
{
    net_kind kind = net_kind::ocn;
    std::vector<std::string> state_names;
    std::vector<std::string> letter_names;
    int initial = 0;
    std::vector<char> final;
    std::vector<transition> transitions;

    int num_states() const { return static_cast<int>( state_names.size() ); }
    int num_letters() const { return static_cast<int>( letter_names.size() ); }
    bool is_final( int q ) const { return final[q] != 0; }

    int find_state( const std::string& name ) const;
    int find_letter( const std::string& name ) const;

    // Throws input_error on duplicates.
    int add_state( const std::string& name, bool is_final = false );
    int add_letter( const std::string& name );
    int state_or_add( const std::string& name );
    int letter_or_add( const std::string& name );

    void add_transition( int src, int letter, long delta, int dst, guard g = guard::none );
    void add_transition( const std::string& src, const std::string& letter, long delta,
                         const std::string& dst, guard g = guard::none );

    std::string render( const transition& t ) const;
    std::string render( const word& w ) const;
    std::string render( const config& c ) const;

    word parse_word( const std::string& text ) const;
    int find_transition( const std::string& rendered ) const;
};

// Outgoing transitions grouped by (state, letter).
class adjacency
{
public:
    explicit adjacency( const net& n );

    const std::vector<int>& out( int state, int letter ) const
    {
        return _out[static_cast<std::size_t>( state ) * _letters + letter];
    }

private:
    std::size_t _letters;
    std::vector<std::vector<int>> _out;
};

std::vector<std::string> validate_net( const net& n );
void require_valid( const net& n );

bool is_unary( const net& n );
bool is_complete( const net& n );
bool is_deterministic( const net& n );

net complete( const net& n );

bool enabled( const transition& t, long counter );

std::vector<config> successors( const net& n, const config& c, int letter );
std::vector<config> successors( const net& n, const adjacency& adj, const config& c, int letter );
config_set post( const net& n, const adjacency& adj, const config_set& cs, int letter );

config_set reach_set( const net& n, const word& w );
config_set reach_set_from( const net& n, const config_set& start, const word& w );
bool accepts( const net& n, const word& w );
bool accepts_from( const net& n, const config& c, const word& w );

std::vector<long> min_credit( const net& n );

// Exact for ocn/socn via min_credit; oca falls back to a bounded search.
class liveness
{
public:
    explicit liveness( const net& n );

    bool live( const config& c ) const;
    bool any_live( const config_set& cs ) const;

private:
    const net* _net;
    std::vector<long> _need;
    long _oca_slack = 0;
};

bool is_live_prefix( const net& n, const word& w );

// Unary rewriting of succinct steps, used only by word oracles.
struct step_expansion
{
    net source;
    std::vector<std::vector<int>> unit_steps;
};

step_expansion expand_binary( const net& n, long limit = 1L << 16 );
bool accepts_stepwise( const step_expansion& e, const word& w );

} // namespace ocn
