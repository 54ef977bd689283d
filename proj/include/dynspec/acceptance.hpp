#pragma once

#include "dynspec/cantor.hpp"
#include "dynspec/numeric.hpp"

#include <string>
#include <vector>

namespace dynspec {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

/// Grid cells of side eps met by the union of products of level-n cylinders
/// of the two factors (positive-area overlaps only).
Integer box_count(const CylinderCover& a, const CylinderCover& b, const Rational& eps);

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance();
constexpr int kCriterionCount = 9;

}  // namespace dynspec
