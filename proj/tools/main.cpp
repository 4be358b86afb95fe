#include <cstdio>
int main() { std::puts("cslex: pipeline CLI not wired yet"); return 1; }
