#pragma once

// Presentations used across the test suites, in the CLI file format.

namespace fixtures {

inline constexpr const char* kZ1 = "gens: a\nrels:";
inline constexpr const char* kZ2 = "gens: a,b\nrels: abAB";
inline constexpr const char* kZ3 = "gens: a,b,c\nrels: abAB, acAC, bcBC";
inline constexpr const char* kF2 = "gens: x,y\nrels:";
inline constexpr const char* kKlein = "gens: x,y\nrels: Xyxy";
inline constexpr const char* kPoincare = "gens: x,z\nrels: zxzxZZZ, zzzXXXXX";
inline constexpr const char* kC2 = "gens: x\nrels: xx";
inline constexpr const char* kC4 = "gens: x\nrels: xxxx";
inline constexpr const char* kC5 = "gens: a\nrels: aaaaa";
inline constexpr const char* kS3 = "gens: a,b\nrels: aa, bbb, abab";

}  // namespace fixtures
