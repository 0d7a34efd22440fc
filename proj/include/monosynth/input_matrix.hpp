#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace monosynth
{

/// Row/column count of a k x N bit matrix.
struct Dims
{
  int rows = 0;
  int cols = 0;

  int bits() const { return rows * cols; }
  auto operator<=>( const Dims& ) const = default;
};

/// 1-based matrix coordinate (i = row, j = column; column 1 is most significant).
struct Position
{
  int row = 0;
  int col = 0;

  auto operator<=>( const Position& ) const = default;
};

class MatrixError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief A k-row, N-column 0/1 matrix.

  Row i encodes the binary number x_{i,1} ... x_{i,N} with x_{i,1} as the most
  significant bit. Storage is row-major.
*/
class InputMatrix
{
public:
  InputMatrix() = default;
  InputMatrix( int rows, int cols );
  explicit InputMatrix( Dims dims ) : InputMatrix( dims.rows, dims.cols ) {}

  /// Parses rows of '0'/'1' characters; all rows must have equal length.
  static InputMatrix from_rows( std::span<const std::string> rows );
  static InputMatrix from_rows( std::initializer_list<std::string> rows );

  /*! \brief Matrix number `index` in the canonical enumeration order.

    Bit 0 of `index` is position (k,N), bit 1 is (k-1,N), ..., bit k is
    (k,N-1): column-major, counting upward from the bottom-right corner.
  */
  static InputMatrix from_index( Dims dims, std::uint64_t index );

  int rows() const { return dims_.rows; }
  int cols() const { return dims_.cols; }
  Dims dims() const { return dims_; }

  bool at( int row, int col ) const { return bits_[offset( row, col )] != 0; }
  bool at( Position p ) const { return at( p.row, p.col ); }
  void set( int row, int col, bool value ) { bits_[offset( row, col )] = value ? 1u : 0u; }
  void set( Position p, bool value ) { set( p.row, p.col, value ); }

  std::span<const std::uint8_t> bits() const { return bits_; }

  bool operator==( const InputMatrix& ) const = default;

  /// Bitwise x <= y (both matrices of identical shape).
  bool dominated_by( const InputMatrix& other ) const;

private:
  std::size_t offset( int row, int col ) const
  {
    return static_cast<std::size_t>( row - 1 ) * static_cast<std::size_t>( dims_.cols ) + static_cast<std::size_t>( col - 1 );
  }

  Dims dims_{};
  std::vector<std::uint8_t> bits_;
};

/// Row-major index of the bit for (row, col) in InputMatrix::bits().
inline std::size_t bit_offset( Dims dims, Position p )
{
  return static_cast<std::size_t>( p.row - 1 ) * dims.cols + ( p.col - 1 );
}

/// One row per line, most significant column first, each line newline-terminated.
std::string to_text( const InputMatrix& x );

/// Reads blank-line-separated matrix blocks; lines starting with '#' are ignored.
std::vector<InputMatrix> read_matrices( std::istream& in );

} // namespace monosynth
