#include "monosynth/input_matrix.hpp"

#include <istream>
#include <sstream>

namespace monosynth
{

InputMatrix::InputMatrix( int rows, int cols ) : dims_{ rows, cols }
{
  if ( rows < 0 || cols < 0 )
  {
    throw MatrixError( "matrix dimensions must be non-negative" );
  }
  bits_.assign( static_cast<std::size_t>( rows ) * static_cast<std::size_t>( cols ), 0u );
}

InputMatrix InputMatrix::from_rows( std::span<const std::string> rows )
{
  if ( rows.empty() )
  {
    throw MatrixError( "matrix needs at least one row" );
  }
  const auto cols = rows.front().size();
  if ( cols == 0 )
  {
    throw MatrixError( "matrix rows must be non-empty" );
  }
  InputMatrix x( static_cast<int>( rows.size() ), static_cast<int>( cols ) );
  for ( std::size_t i = 0; i < rows.size(); ++i )
  {
    if ( rows[i].size() != cols )
    {
      throw MatrixError( "row " + std::to_string( i + 1 ) + " has " + std::to_string( rows[i].size() ) +
                         " columns, expected " + std::to_string( cols ) );
    }
    for ( std::size_t j = 0; j < cols; ++j )
    {
      const char c = rows[i][j];
      if ( c != '0' && c != '1' )
      {
        throw MatrixError( std::string( "invalid matrix character '" ) + c + "'" );
      }
      x.set( static_cast<int>( i + 1 ), static_cast<int>( j + 1 ), c == '1' );
    }
  }
  return x;
}

InputMatrix InputMatrix::from_rows( std::initializer_list<std::string> rows )
{
  const std::vector<std::string> v( rows );
  return from_rows( std::span<const std::string>( v ) );
}

InputMatrix InputMatrix::from_index( Dims dims, std::uint64_t index )
{
  InputMatrix x( dims );
  int bit = 0;
  for ( int j = dims.cols; j >= 1; --j )
  {
    for ( int i = dims.rows; i >= 1; --i, ++bit )
    {
      x.set( i, j, ( ( index >> bit ) & 1u ) != 0 );
    }
  }
  return x;
}

bool InputMatrix::dominated_by( const InputMatrix& other ) const
{
  if ( dims_ != other.dims_ )
  {
    throw MatrixError( "cannot compare matrices of different shapes" );
  }
  for ( std::size_t p = 0; p < bits_.size(); ++p )
  {
    if ( bits_[p] > other.bits_[p] )
    {
      return false;
    }
  }
  return true;
}

std::string to_text( const InputMatrix& x )
{
  std::string out;
  out.reserve( static_cast<std::size_t>( x.rows() ) * ( x.cols() + 1 ) );
  for ( int i = 1; i <= x.rows(); ++i )
  {
    for ( int j = 1; j <= x.cols(); ++j )
    {
      out.push_back( x.at( i, j ) ? '1' : '0' );
    }
    out.push_back( '\n' );
  }
  return out;
}

std::vector<InputMatrix> read_matrices( std::istream& in )
{
  std::vector<InputMatrix> result;
  std::vector<std::string> block;
  auto flush = [&] {
    if ( !block.empty() )
    {
      result.push_back( InputMatrix::from_rows( std::span<const std::string>( block ) ) );
      block.clear();
    }
  };

  std::string line;
  while ( std::getline( in, line ) )
  {
    if ( !line.empty() && line.back() == '\r' )
    {
      line.pop_back();
    }
    if ( !line.empty() && line.front() == '#' )
    {
      continue;
    }
    if ( line.find_first_not_of( " \t" ) == std::string::npos )
    {
      flush();
      continue;
    }
    block.push_back( line );
  }
  flush();
  return result;
}

} // namespace monosynth
