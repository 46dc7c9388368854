#include "jumpdens/cli/app.hpp"

#include <iostream>

int
main(int argc, char** argv)
{
  return jumpdens::cli::run_cli(argc, argv, std::cout, std::cerr);
}
