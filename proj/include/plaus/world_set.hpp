#pragma once

#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

namespace plaus
{

/// Subset of a model's domain, stored as a bit vector over world indices.
class WorldSet
{
public:
    WorldSet() = default;
    explicit WorldSet( std::size_t universe, bool full = false ) : _bits( universe, full ) {}

    static WorldSet singleton( std::size_t universe, std::size_t w )
    {
        WorldSet s{ universe };
        s.insert( w );
        return s;
    }

    [[nodiscard]] std::size_t universe() const { return _bits.size(); }
    [[nodiscard]] bool contains( std::size_t w ) const { return _bits[ w ]; }
    void insert( std::size_t w ) { _bits[ w ] = true; }
    void erase( std::size_t w ) { _bits[ w ] = false; }

    [[nodiscard]] std::size_t count() const
    {
        std::size_t n = 0;
        for ( bool b : _bits )
            n += b ? 1 : 0;
        return n;
    }

    [[nodiscard]] bool empty() const
    {
        for ( bool b : _bits )
            if ( b )
                return false;
        return true;
    }

    /// Members in increasing index order.
    [[nodiscard]] std::vector<std::size_t> members() const
    {
        std::vector<std::size_t> out;
        for ( std::size_t i = 0; i < _bits.size(); ++i )
            if ( _bits[ i ] )
                out.push_back( i );
        return out;
    }

    /// Least member, or universe() when empty.
    [[nodiscard]] std::size_t first() const
    {
        for ( std::size_t i = 0; i < _bits.size(); ++i )
            if ( _bits[ i ] )
                return i;
        return _bits.size();
    }

    [[nodiscard]] bool subset_of( const WorldSet& other ) const
    {
        assert( universe() == other.universe() );
        for ( std::size_t i = 0; i < _bits.size(); ++i )
            if ( _bits[ i ] && !other._bits[ i ] )
                return false;
        return true;
    }

    WorldSet& operator&=( const WorldSet& other )
    {
        assert( universe() == other.universe() );
        for ( std::size_t i = 0; i < _bits.size(); ++i )
            _bits[ i ] = _bits[ i ] && other._bits[ i ];
        return *this;
    }

    WorldSet& operator|=( const WorldSet& other )
    {
        assert( universe() == other.universe() );
        for ( std::size_t i = 0; i < _bits.size(); ++i )
            _bits[ i ] = _bits[ i ] || other._bits[ i ];
        return *this;
    }

    WorldSet& operator-=( const WorldSet& other )
    {
        assert( universe() == other.universe() );
        for ( std::size_t i = 0; i < _bits.size(); ++i )
            _bits[ i ] = _bits[ i ] && !other._bits[ i ];
        return *this;
    }

    [[nodiscard]] WorldSet complement() const
    {
        WorldSet out{ universe() };
        for ( std::size_t i = 0; i < _bits.size(); ++i )
            out._bits[ i ] = !_bits[ i ];
        return out;
    }

    friend WorldSet operator&( WorldSet a, const WorldSet& b ) { return a &= b; }
    friend WorldSet operator|( WorldSet a, const WorldSet& b ) { return a |= b; }
    friend WorldSet operator-( WorldSet a, const WorldSet& b ) { return a -= b; }
    friend bool operator==( const WorldSet&, const WorldSet& ) = default;

private:
    std::vector<bool> _bits;
};

/// Binary relation over world indices, as a dense boolean matrix.
class Relation
{
public:
    Relation() = default;
    explicit Relation( std::size_t universe ) : _n{ universe }, _bits( universe * universe, false ) {}

    static Relation identity( std::size_t universe )
    {
        Relation r{ universe };
        for ( std::size_t i = 0; i < universe; ++i )
            r.insert( i, i );
        return r;
    }

    [[nodiscard]] std::size_t universe() const { return _n; }
    [[nodiscard]] bool contains( std::size_t x, std::size_t y ) const { return _bits[ x * _n + y ]; }
    void insert( std::size_t x, std::size_t y ) { _bits[ x * _n + y ] = true; }
    void erase( std::size_t x, std::size_t y ) { _bits[ x * _n + y ] = false; }

    [[nodiscard]] bool empty() const
    {
        for ( bool b : _bits )
            if ( b )
                return false;
        return true;
    }

    /// All pairs in row-major (lexicographic index) order.
    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> pairs() const
    {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for ( std::size_t x = 0; x < _n; ++x )
            for ( std::size_t y = 0; y < _n; ++y )
                if ( contains( x, y ) )
                    out.emplace_back( x, y );
        return out;
    }

    /// Worlds y with (x, y) in the relation.
    [[nodiscard]] WorldSet image( std::size_t x ) const
    {
        WorldSet out{ _n };
        for ( std::size_t y = 0; y < _n; ++y )
            if ( contains( x, y ) )
                out.insert( y );
        return out;
    }

    /// Worlds x with (x, y) in the relation.
    [[nodiscard]] WorldSet preimage( std::size_t y ) const
    {
        WorldSet out{ _n };
        for ( std::size_t x = 0; x < _n; ++x )
            if ( contains( x, y ) )
                out.insert( x );
        return out;
    }

    [[nodiscard]] Relation converse() const
    {
        Relation out{ _n };
        for ( std::size_t x = 0; x < _n; ++x )
            for ( std::size_t y = 0; y < _n; ++y )
                if ( contains( x, y ) )
                    out.insert( y, x );
        return out;
    }

    void close_reflexive()
    {
        for ( std::size_t i = 0; i < _n; ++i )
            insert( i, i );
    }

    // Warshall.
    void close_transitive()
    {
        for ( std::size_t k = 0; k < _n; ++k )
            for ( std::size_t i = 0; i < _n; ++i )
                if ( contains( i, k ) )
                    for ( std::size_t j = 0; j < _n; ++j )
                        if ( contains( k, j ) )
                            insert( i, j );
    }

    friend bool operator==( const Relation&, const Relation& ) = default;

private:
    std::size_t _n = 0;
    std::vector<bool> _bits;
};

} // namespace plaus
