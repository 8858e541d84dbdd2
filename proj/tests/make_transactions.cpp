// Writes simulated transactions CSVs for the command-line tests.
#include <cstdio>
#include <string>

#include "fixtures.hpp"
#include "logitmp/estimation.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: make_transactions <dir>\n");
    return 2;
  }
  const std::string dir = argv[1];
  const auto products = fixtures::products8();
  const auto data = logitmp::simulate_transactions(fixtures::truth8(products), products, 40,
                                                   300, 0.7, 3);
  logitmp::write_transactions(data, dir + "/tx.csv", dir + "/as.csv", dir + "/pr.csv");
  return 0;
}
