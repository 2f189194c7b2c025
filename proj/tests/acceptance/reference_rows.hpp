// reference_rows.hpp - transcribed reference rows: triple, behaviour of p in K, conclusion.
#pragma once

#include <vector>

#include "kummer/fparith.hpp"

namespace kummer::reference {

struct Row {
    u64 p, ell0, ell1;
    Ramification ram;
    bool dim_gt_3;  // "alpha^2 + beta = 0?" column
    int group;      // 1..7, one per (p, ell0) block; 7 = rows without an independent Hecke rank
};

constexpr Ramification W = Ramification::Wild;
constexpr Ramification T = Ramification::Tame;

inline const std::vector<Row>& rows() {
    static const std::vector<Row> r = {
        {5, 11, 23, W, false, 1},   {5, 11, 43, T, true, 1},    {5, 11, 67, W, false, 1},
        {5, 11, 197, W, true, 1},   {5, 11, 263, W, false, 1},  {5, 11, 307, T, false, 1},
        {5, 11, 373, W, false, 1},  {5, 11, 397, W, false, 1},  {5, 11, 593, T, false, 1},
        {5, 11, 683, W, true, 1},   {5, 11, 727, W, true, 1},   {5, 11, 857, T, false, 1},
        {5, 11, 967, W, false, 1},  {5, 11, 1013, W, false, 1},

        {7, 29, 17, W, false, 2},   {7, 29, 157, W, false, 2},  {7, 29, 521, T, true, 2},

        {5, 41, 73, W, true, 3},    {5, 41, 83, W, false, 3},   {5, 41, 137, W, false, 3},
        {5, 41, 163, W, false, 3},  {5, 41, 167, W, false, 3},  {5, 41, 173, W, false, 3},
        {5, 41, 383, W, false, 3},  {5, 41, 547, W, false, 3},  {5, 41, 577, W, true, 3},
        {5, 41, 683, W, false, 3},  {5, 41, 983, W, true, 3},

        {5, 61, 13, W, false, 4},   {5, 61, 47, W, true, 4},    {5, 61, 197, W, false, 4},
        {5, 61, 257, T, false, 4},  {5, 61, 337, W, false, 4},  {5, 61, 353, W, false, 4},
        {5, 61, 367, W, false, 4},  {5, 61, 487, W, true, 4},   {5, 61, 563, W, false, 4},
        {5, 61, 733, W, false, 4},  {5, 61, 853, W, true, 4},   {5, 61, 977, W, true, 4},

        {5, 71, 23, W, false, 5},   {5, 71, 37, W, false, 5},   {5, 71, 97, W, false, 5},
        {5, 71, 103, W, false, 5},  {5, 71, 193, T, false, 5},  {5, 71, 233, W, true, 5},
        {5, 71, 283, W, false, 5},  {5, 71, 307, T, false, 5},  {5, 71, 463, W, false, 5},
        {5, 71, 853, W, false, 5},

        {7, 43, 37, W, true, 6},    {7, 43, 79, T, false, 6},

        {5, 41, 653, W, true, 7},   {5, 41, 823, W, false, 7},  {5, 61, 743, T, false, 7},
        {5, 61, 883, W, false, 7},  {5, 61, 997, W, false, 7},  {5, 71, 613, W, false, 7},
        {5, 71, 673, W, false, 7},  {5, 71, 733, W, false, 7},
    };
    return r;
}

// Triple excluded by the class-number gate.
constexpr u64 kGated[3] = {7, 29, 347};

}  // namespace kummer::reference
