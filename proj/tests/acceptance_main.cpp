// Dedicated acceptance binary: one PASS/FAIL line per criterion, nonzero
// exit on any failure. The same checks back the CLI `validate` verb.

#include <iostream>

#include "vacforce/acceptance.hpp"

int main() { return vacforce::run_acceptance({}, std::cout); }
