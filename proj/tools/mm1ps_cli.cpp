// Command-line front end; links only the public C API.
#include <cstdio>

#include "mm1ps.h"

int main() {
    std::printf("placeholder\n");
    return 0;
}
