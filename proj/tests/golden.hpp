#pragma once

#include <array>
#include <string>

// Depth <= 3 sets (codes 0..15) written out by hand from nested brace patterns.
namespace golden {

inline const std::string e1 = "{}";
inline const std::string e2 = "{" + e1 + "}";
inline const std::string e3 = "{" + e2 + "}";
inline const std::string e4 = "{" + e2 + e1 + "}";
inline const std::string c4 = "{" + e2 + "," + e1 + "}";
inline const std::string o1 = "\xE2\x88\x85";
inline const std::string o2 = "{" + o1 + "}";
inline const std::string o3 = "{" + o2 + "}";
inline const std::string o4 = "{" + o2 + "," + o1 + "}";

struct Row {
  unsigned code;
  std::string binary;
  std::string plain;
  std::string commas;
  std::string commas_empty;
  unsigned depth;
  unsigned chains;
  unsigned maximal_chains;
};

inline const std::array<Row, 16> rows = {{
    {0, "", "{}", "{}", o1, 0, 1, 0},
    {1, "1", "{" + e1 + "}", "{" + e1 + "}", "{" + o1 + "}", 1, 2, 1},
    {2, "10", "{" + e2 + "}", "{" + e2 + "}", "{" + o2 + "}", 2, 3, 1},
    {3, "11", "{" + e2 + e1 + "}", "{" + e2 + "," + e1 + "}", "{" + o2 + "," + o1 + "}", 2, 4, 2},
    {4, "100", "{" + e3 + "}", "{" + e3 + "}", "{" + o3 + "}", 3, 4, 1},
    {5, "101", "{" + e3 + e1 + "}", "{" + e3 + "," + e1 + "}", "{" + o3 + "," + o1 + "}", 3, 5, 2},
    {6, "110", "{" + e3 + e2 + "}", "{" + e3 + "," + e2 + "}", "{" + o3 + "," + o2 + "}", 3, 6, 2},
    {7, "111", "{" + e3 + e2 + e1 + "}", "{" + e3 + "," + e2 + "," + e1 + "}", "{" + o3 + "," + o2 + "," + o1 + "}", 3, 7, 3},
    {8, "1000", "{" + e4 + "}", "{" + c4 + "}", "{" + o4 + "}", 3, 5, 2},
    {9, "1001", "{" + e4 + e1 + "}", "{" + c4 + "," + e1 + "}", "{" + o4 + "," + o1 + "}", 3, 6, 3},
    {10, "1010", "{" + e4 + e2 + "}", "{" + c4 + "," + e2 + "}", "{" + o4 + "," + o2 + "}", 3, 7, 3},
    {11, "1011", "{" + e4 + e2 + e1 + "}", "{" + c4 + "," + e2 + "," + e1 + "}", "{" + o4 + "," + o2 + "," + o1 + "}", 3, 8, 4},
    {12, "1100", "{" + e4 + e3 + "}", "{" + c4 + "," + e3 + "}", "{" + o4 + "," + o3 + "}", 3, 8, 3},
    {13, "1101", "{" + e4 + e3 + e1 + "}", "{" + c4 + "," + e3 + "," + e1 + "}", "{" + o4 + "," + o3 + "," + o1 + "}", 3, 9, 4},
    {14, "1110", "{" + e4 + e3 + e2 + "}", "{" + c4 + "," + e3 + "," + e2 + "}", "{" + o4 + "," + o3 + "," + o2 + "}", 3, 10, 4},
    {15, "1111", "{" + e4 + e3 + e2 + e1 + "}", "{" + c4 + "," + e3 + "," + e2 + "," + e1 + "}",
     "{" + o4 + "," + o3 + "," + o2 + "," + o1 + "}", 3, 11, 5},
}};

}  // namespace golden
