#include "legdga/linalg.hpp"

namespace legdga::gf2 {

std::vector<std::size_t> rref(std::vector<Gf2Vec>& rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != r && rows[i][c] != 0) {
                for (std::size_t j = c; j < cols; ++j) rows[i][j] ^= rows[r][j];
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(const Matrix& m) {
    auto rows = to_rows(m);
    return rref(rows).size();
}

std::vector<Gf2Vec> kernel(const Matrix& m) {
    auto rows = to_rows(m);
    auto pivots = rref(rows);
    std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Gf2Vec> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        Gf2Vec v(cols, 0);
        v[free_col] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (rows[r][free_col] != 0) v[pivots[r]] = 1;
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Gf2Vec> solve(const Matrix& m, const Gf2Vec& b) {
    if (b.size() != m.rows()) throw Error(Error::Kind::validation, "solve: dimension mismatch");
    auto rows = to_rows(m);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(b[i]);
    auto pivots = rref(rows);
    std::size_t cols = m.cols();
    Gf2Vec x(cols, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols) return std::nullopt; // pivot in the augmented column
        x[pivots[r]] = rows[r][cols];
    }
    return x;
}

} // namespace legdga::gf2
