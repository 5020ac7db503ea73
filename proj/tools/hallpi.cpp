#include <iostream>

#include "hallpi/cli.hpp"

int main(int argc, char **argv)
{
  return hallpi::cli::run_cli(argc, argv, std::cout, std::cerr);
}
