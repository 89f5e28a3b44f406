#pragma once

#include "fodechain/model.hpp"

// Reference parameter sets used across the test suites.
namespace testdata {

inline fodechain::model::DimParams chain_base(double a0) {
    fodechain::model::DimParams p;
    p.a0 = a0;
    p.b0 = 0.075;
    p.a1 = 0.105;
    p.d0 = 10.0;
    p.d1 = 10.0;
    p.d2 = 10.0;
    p.d3 = 20.0;
    p.v0 = 1.0;
    p.v1 = 2.0;
    p.v2 = 0.405;
    p.v3 = 1.0;
    p.c3 = 0.047;
    return p;
}

inline fodechain::model::DimParams example2() { return chain_base(0.47); }
inline fodechain::model::DimParams example3() { return chain_base(0.27); }

inline fodechain::model::DimParams example4() {
    fodechain::model::DimParams p = chain_base(0.15);
    p.b0 = 0.03;
    p.a1 = 0.001;
    p.v0 = 0.85;
    p.v1 = 2.5;
    p.v2 = 2.2;
    return p;
}

inline fodechain::model::DimParams example5() {
    fodechain::model::DimParams p = chain_base(0.47);
    p.b0 = 0.25;
    return p;
}

} // namespace testdata
