#include <iostream>
#include <string>
#include <vector>

#include "wordnorm/cli.hpp"

int main(int argc, char** argv) {
    return wordnorm::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
