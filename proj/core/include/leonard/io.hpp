#pragma once

// Serialization helpers: matrix CSV (row-major "re,im" cells), root-set JSON
// and a Table-1-style CSV layout.

#include <string>

#include "leonard/bethe.hpp"
#include "leonard/triple.hpp"

namespace leonard {

std::string matrix_to_csv(const Mat& m);
void write_matrix_csv(const std::string& path, const Mat& m);

// {kind, epsilon, level, U: [[re,im],...], residuals: [...]}
std::string rootset_to_json(const BetheRootSet& rs);
std::string rootsets_to_json(const std::vector<BetheRootSet>& sets);
std::string rootsets_to_csv(const std::vector<BetheRootSet>& sets);

}  // namespace leonard
