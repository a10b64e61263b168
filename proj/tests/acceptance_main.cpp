#include <iostream>

#include "ribcat/report.hpp"

int main() {
  ribcat::RunReport rep = ribcat::run_acceptance(ribcat::Tolerance(), true);
  return rep.all_passed() ? 0 : 1;
}
