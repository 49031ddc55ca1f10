#include "cli.hpp"

int main(int argc, char** argv) {
    return qheap::cli::run(argc, argv, std::cout, std::cerr);
}
