// Acceptance suite: one pass/fail line per criterion. Placeholder while the
// library comes up; the real criteria land next.
#include <cstdio>

int main() {
    std::puts("acceptance suite placeholder");
    return 0;
}
