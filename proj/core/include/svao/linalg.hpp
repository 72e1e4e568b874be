#pragma once

#include "svao/rational.hpp"

#include <vector>

namespace svao {

// Dense exact row echelon over Q. Matrices here are tiny (cochain spaces on
// rank <= 4 carriers), so no sparsity tricks.
using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

// Reduced row echelon form in place; pivots chosen left to right, rows kept
// in pivot order. Returns pivot columns. Deterministic.
std::vector<int> rref(Mat& m);

int rank(Mat m);

// Basis of the right kernel {x : m x = 0}, canonical free-variable basis.
Mat kernel_basis(const Mat& m);

// Solve m x = b; empty optional if inconsistent.
bool solve(const Mat& m, const Vec& b, Vec& x);

// dim(span(rows(a)) + span(rows(b))) etc. helpers
int rank_stacked(const Mat& a, const Mat& b);

}  // namespace svao
