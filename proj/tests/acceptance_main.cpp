#include <iostream>

#include "thompson/acceptance.hpp"

int main() { return thompson::acceptance::run_all(std::cout) ? 0 : 1; }
