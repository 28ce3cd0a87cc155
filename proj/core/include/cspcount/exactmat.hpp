#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cspcount/model.hpp"
#include "cspcount/rational.hpp"

namespace cspcount {

/// Dense non-negative matrix with exact entries. Rows and columns carry
/// tuple labels (used for reporting; the algebra only uses indices).
class RationalMatrix {
  public:
    RationalMatrix(std::vector<Tuple> row_labels, std::vector<Tuple> col_labels,
                   std::vector<Rat> entries);
    /// Unlabeled rows x cols matrix; labels default to singleton index tuples.
    RationalMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return row_labels_.size(); }
    std::size_t cols() const { return col_labels_.size(); }
    const std::vector<Tuple>& row_labels() const { return row_labels_; }
    const std::vector<Tuple>& col_labels() const { return col_labels_; }
    const Rat& at(std::size_t r, std::size_t c) const { return entries_[r * cols() + c]; }
    Rat& at(std::size_t r, std::size_t c) { return entries_[r * cols() + c]; }
    const std::vector<Rat>& entries() const { return entries_; }

    bool operator==(const RationalMatrix& other) const;

  private:
    std::vector<Tuple> row_labels_;
    std::vector<Tuple> col_labels_;
    std::vector<Rat> entries_;
};

RationalMatrix transpose(const RationalMatrix& m);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);

/// f laid out as a d^a x d^(r-a) matrix: rows indexed by the first a
/// coordinates, columns by the rest.
RationalMatrix function_matrix(const FunctionTable& f, int a);

/// Witness that a matrix is not rectangular: three positive entries and a
/// zero closing the rectangle, i.e. M(row1,col1), M(row1,col2), M(row2,col1) > 0
/// but M(row2,col2) == 0. Indices are 0-based.
struct NotRectangularWitness {
    std::size_t row1, col1, row2, col2;
};

/// Positive-support block structure of a rectangular matrix. Blocks are
/// ordered by smallest row index; zero rows/columns belong to no block.
struct BlockDecomposition {
    struct Block {
        std::vector<std::size_t> rows;  // sorted
        std::vector<std::size_t> cols;  // sorted
    };
    std::vector<Block> blocks;
    std::vector<std::size_t> zero_rows;
    std::vector<std::size_t> zero_cols;
};

/// Connected components of the bipartite support graph. Succeeds iff the
/// matrix is rectangular; otherwise carries a witness. The all-zero matrix
/// decomposes into zero blocks.
struct BlockDecomposeResult {
    std::optional<BlockDecomposition> decomposition;  // set iff rectangular
    std::optional<NotRectangularWitness> witness;     // set iff not rectangular
    bool rectangular() const { return decomposition.has_value(); }
};

BlockDecomposeResult block_decompose(const RationalMatrix& m);

/// A 2x2 minor of positive entries that does not vanish:
/// M(row1,col1) * M(row2,col2) != M(row1,col2) * M(row2,col1).
struct MinorWitness {
    std::size_t row1, col1, row2, col2;
};

struct BlockRank1Check {
    bool ok = false;
    std::optional<NotRectangularWitness> not_rectangular;
    std::optional<MinorWitness> minor;
};

/// Rectangular with every block of rank 1. On failure carries either the
/// rectangularity witness or the violating minor.
BlockRank1Check is_block_rank_1(const RationalMatrix& m);

/// The eight-factor identity
///   M(a,k)^2 M(b,l)^2 M(a,l) M(b,k) == M(a,l)^2 M(b,k)^2 M(a,k) M(b,l)
/// checked over all row pairs a != b and column pairs k != l. For a square
/// rectangular matrix this is equivalent to is_block_rank_1; non-square or
/// non-rectangular input is a contract violation (std::invalid_argument).
bool rank1_condition(const RationalMatrix& m);

/// A pair of rows with positive inner product that are not scalar multiples
/// of each other; nullopt iff the matrix is block-rank-1. Indices 0-based.
std::optional<std::pair<std::size_t, std::size_t>> find_bad_row_pair(const RationalMatrix& m);

}  // namespace cspcount
