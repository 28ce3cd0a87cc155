#include "cspcount/exactmat.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cspcount {

RationalMatrix::RationalMatrix(std::vector<Tuple> row_labels, std::vector<Tuple> col_labels,
                               std::vector<Rat> entries)
    : row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)),
      entries_(std::move(entries)) {
    if (entries_.size() != row_labels_.size() * col_labels_.size())
        throw std::invalid_argument("matrix entry count != rows * cols");
    for (const Rat& v : entries_)
        if (sgn(v) < 0) throw std::invalid_argument("matrix entries must be non-negative");
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : entries_(rows * cols, Rat(0)) {
    row_labels_.reserve(rows);
    col_labels_.reserve(cols);
    for (std::size_t r = 0; r < rows; ++r) row_labels_.push_back({static_cast<int>(r) + 1});
    for (std::size_t c = 0; c < cols; ++c) col_labels_.push_back({static_cast<int>(c) + 1});
}

bool RationalMatrix::operator==(const RationalMatrix& other) const {
    return rows() == other.rows() && cols() == other.cols() && entries_ == other.entries_;
}

RationalMatrix transpose(const RationalMatrix& m) {
    std::vector<Rat> entries(m.entries().size(), Rat(0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) entries[c * m.rows() + r] = m.at(r, c);
    return RationalMatrix(m.col_labels(), m.row_labels(), std::move(entries));
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
    std::vector<Rat> entries(a.rows() * b.cols(), Rat(0));
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (sgn(a.at(r, k)) == 0) continue;
            for (std::size_t c = 0; c < b.cols(); ++c)
                entries[r * b.cols() + c] += a.at(r, k) * b.at(k, c);
        }
    return RationalMatrix(a.row_labels(), b.col_labels(), std::move(entries));
}

RationalMatrix function_matrix(const FunctionTable& f, int a) {
    if (a < 1 || a >= f.arity()) throw std::invalid_argument("function_matrix: bad split");
    const std::size_t rows = tuple_count(f.domain_size(), a);
    const std::size_t cols = tuple_count(f.domain_size(), f.arity() - a);
    std::vector<Tuple> row_labels, col_labels;
    row_labels.reserve(rows);
    col_labels.reserve(cols);
    for (std::size_t r = 0; r < rows; ++r) row_labels.push_back(decode_tuple(r, f.domain_size(), a));
    for (std::size_t c = 0; c < cols; ++c)
        col_labels.push_back(decode_tuple(c, f.domain_size(), f.arity() - a));
    return RationalMatrix(std::move(row_labels), std::move(col_labels), f.values());
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void merge(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Shortest alternating row/col path from row `r0` to column `ctarget`
// through positive entries, then the first failing shortcut yields the
// three-positives-one-zero rectangle.
NotRectangularWitness rectangle_witness(const RationalMatrix& m, std::size_t r0,
                                        std::size_t ctarget) {
    const std::size_t R = m.rows(), C = m.cols();
    // BFS over nodes: rows [0,R), cols [R, R+C)
    std::vector<std::size_t> parent(R + C, SIZE_MAX);
    std::deque<std::size_t> queue{r0};
    std::vector<bool> seen(R + C, false);
    seen[r0] = true;
    while (!queue.empty()) {
        std::size_t node = queue.front();
        queue.pop_front();
        if (node == R + ctarget) break;
        if (node < R) {
            for (std::size_t c = 0; c < C; ++c)
                if (sgn(m.at(node, c)) > 0 && !seen[R + c]) {
                    seen[R + c] = true;
                    parent[R + c] = node;
                    queue.push_back(R + c);
                }
        } else {
            const std::size_t c = node - R;
            for (std::size_t r = 0; r < R; ++r)
                if (sgn(m.at(r, c)) > 0 && !seen[r]) {
                    seen[r] = true;
                    parent[r] = node;
                    queue.push_back(r);
                }
        }
    }
    // Reconstruct r0, c1, r1, c2, ..., cL = ctarget.
    std::vector<std::size_t> path;  // node ids, reversed
    for (std::size_t node = R + ctarget; node != SIZE_MAX; node = parent[node]) path.push_back(node);
    std::reverse(path.begin(), path.end());
    // path = [r0, c1, r1, c2, ...]; cols at odd positions.
    for (std::size_t t = 3; t < path.size(); t += 2) {
        const std::size_t ct = path[t] - R;
        if (sgn(m.at(r0, ct)) == 0) {
            const std::size_t rprev = path[t - 1];
            const std::size_t cprev = path[t - 2] - R;
            return NotRectangularWitness{rprev, cprev, r0, ct};
        }
    }
    throw std::logic_error("rectangle witness reconstruction failed");
}

}  // namespace

BlockDecomposeResult block_decompose(const RationalMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    UnionFind uf(R + C);
    std::vector<bool> row_used(R, false), col_used(C, false);
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t c = 0; c < C; ++c)
            if (sgn(m.at(r, c)) > 0) {
                uf.merge(r, R + c);
                row_used[r] = true;
                col_used[c] = true;
            }

    std::map<std::size_t, BlockDecomposition::Block> by_root;
    for (std::size_t r = 0; r < R; ++r)
        if (row_used[r]) by_root[uf.find(r)].rows.push_back(r);
    for (std::size_t c = 0; c < C; ++c)
        if (col_used[c]) by_root[uf.find(R + c)].cols.push_back(c);

    BlockDecomposition decomposition;
    for (std::size_t r = 0; r < R; ++r)
        if (!row_used[r]) decomposition.zero_rows.push_back(r);
    for (std::size_t c = 0; c < C; ++c)
        if (!col_used[c]) decomposition.zero_cols.push_back(c);
    for (auto& [root, block] : by_root) decomposition.blocks.push_back(std::move(block));
    std::sort(decomposition.blocks.begin(), decomposition.blocks.end(),
              [](const auto& a, const auto& b) { return a.rows.front() < b.rows.front(); });

    // Rectangular iff every cell of every block is positive.
    for (const auto& block : decomposition.blocks)
        for (std::size_t r : block.rows)
            for (std::size_t c : block.cols)
                if (sgn(m.at(r, c)) == 0)
                    return BlockDecomposeResult{std::nullopt, rectangle_witness(m, r, c)};

    return BlockDecomposeResult{std::move(decomposition), std::nullopt};
}

BlockRank1Check is_block_rank_1(const RationalMatrix& m) {
    BlockRank1Check check;
    BlockDecomposeResult decomposed = block_decompose(m);
    if (!decomposed.rectangular()) {
        check.not_rectangular = decomposed.witness;
        return check;
    }
    // Within an all-positive block, vanishing minors against the anchor row
    // and column imply all minors vanish.
    for (const auto& block : decomposed.decomposition->blocks) {
        const std::size_t r0 = block.rows.front(), c0 = block.cols.front();
        for (std::size_t r : block.rows) {
            if (r == r0) continue;
            for (std::size_t c : block.cols) {
                if (c == c0) continue;
                if (m.at(r0, c0) * m.at(r, c) != m.at(r0, c) * m.at(r, c0)) {
                    check.minor = MinorWitness{r0, c0, r, c};
                    return check;
                }
            }
        }
    }
    check.ok = true;
    return check;
}

bool rank1_condition(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("rank1_condition: matrix must be square");
    if (!block_decompose(m).rectangular())
        throw std::invalid_argument("rank1_condition: matrix must be rectangular");
    const std::size_t n = m.rows();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l) {
                    const Rat& ak = m.at(a, k);
                    const Rat& al = m.at(a, l);
                    const Rat& bk = m.at(b, k);
                    const Rat& bl = m.at(b, l);
                    if (ak * ak * bl * bl * al * bk != al * al * bk * bk * ak * bl) return false;
                }
    return true;
}

namespace {

// Linear dependence via vanishing 2x2 minors against the first nonzero
// anchor column; covers zero rows.
bool rows_dependent(const RationalMatrix& m, std::size_t r, std::size_t s) {
    std::size_t c0 = m.cols();
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (sgn(m.at(r, c)) != 0 || sgn(m.at(s, c)) != 0) {
            c0 = c;
            break;
        }
    if (c0 == m.cols()) return true;  // both rows zero
    for (std::size_t c = c0 + 1; c < m.cols(); ++c)
        if (m.at(r, c0) * m.at(s, c) != m.at(r, c) * m.at(s, c0)) return false;
    return true;
}

}  // namespace

std::optional<std::pair<std::size_t, std::size_t>> find_bad_row_pair(const RationalMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t s = r + 1; s < m.rows(); ++s) {
            Rat inner(0);
            for (std::size_t c = 0; c < m.cols(); ++c) inner += m.at(r, c) * m.at(s, c);
            if (sgn(inner) > 0 && !rows_dependent(m, r, s)) return std::make_pair(r, s);
        }
    return std::nullopt;
}

}  // namespace cspcount
