#include "svao/linalg.hpp"

namespace svao {

std::vector<int> rref(Mat& m)
{
    std::vector<int> pivots;
    if (m.empty())
        return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && is_zero(m[p][c]))
            ++p;
        if (p == rows)
            continue;
        std::swap(m[r], m[p]);
        Rat inv = m[r][c];
        for (size_t j = c; j < cols; ++j)
            m[r][j] /= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(m[i][c]))
                continue;
            Rat f = m[i][c];
            for (size_t j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

int rank(Mat m)
{
    return static_cast<int>(rref(m).size());
}

Mat kernel_basis(const Mat& m_in)
{
    Mat m = m_in;
    if (m.empty())
        return {};
    size_t cols = m[0].size();
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots)
        is_pivot[c] = true;
    Mat basis;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc])
            continue;
        Vec v(cols, Rat(0));
        v[fc] = Rat(1);
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m[r][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

bool solve(const Mat& m_in, const Vec& b, Vec& x)
{
    Mat m = m_in;
    size_t cols = m.empty() ? 0 : m[0].size();
    for (size_t i = 0; i < m.size(); ++i)
        m[i].push_back(b[i]);
    auto pivots = rref(m);
    x.assign(cols, Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == static_cast<int>(cols))
            return false;  // 0 = 1 row
        x[pivots[r]] = m[r][cols];
    }
    return true;
}

int rank_stacked(const Mat& a, const Mat& b)
{
    Mat m = a;
    for (auto& row : b)
        m.push_back(row);
    return rank(std::move(m));
}

}  // namespace svao
