// Exact and asymptotic 12j for one point of the case-1 sweep.
#include "w3nj/w3nj.hpp"

#include <iostream>

int main() {
    using namespace w3nj;
    TwelveJInput in = TwelveJInput::from_twice({51, 59, 42, 44, 55, 53, 54, 52, 54, 50, 2, 60});

    SurdSum exact = wigner12j_first(in);
    AsymptoticResult asym = asym12j(in);

    std::cout << "12j " << in.str() << "\n";
    std::cout << "exact  " << exact.to_double() << "\n";
    std::cout << "asym   " << (asym.allowed ? format_double(asym.value) : to_string(asym.region)) << "\n";
    std::cout << "6j cache holds " << SixJCache::global().size() << " values\n";
}
