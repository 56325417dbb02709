#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hexazero {

enum class Cell : std::uint8_t { Empty = 0, White = 1, Black = 2 };
enum class Color : std::uint8_t { White = 1, Black = 2 };

constexpr Color opposite(Color c) { return c == Color::White ? Color::Black : Color::White; }
constexpr Cell cell_of(Color c) { return c == Color::White ? Cell::White : Cell::Black; }
std::string_view color_name(Color c);

inline constexpr int kSquares = 9;
inline constexpr int kPolicySize = 28;
inline constexpr int kInputSize = 21;

// Square indices: 0=a3 1=b3 2=c3 / 3=a2 4=b2 5=c2 / 6=a1 7=b1 8=c1.
struct Move {
    std::uint8_t from = 0;
    std::uint8_t to = 0;

    friend constexpr bool operator==(Move, Move) = default;
};

struct Outcome {
    bool terminal = false;
    std::optional<Color> winner;
};

class IllegalMove : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class UnknownMove : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using NetInput = std::array<std::uint8_t, kInputSize>;

class Board {
public:
    Board() = default;
    Board(const std::array<Cell, kSquares>& cells, Color turn) : cells_(cells), turn_(turn) {}

    static Board starting_position();

    const std::array<Cell, kSquares>& cells() const { return cells_; }
    Cell at(int sq) const { return cells_[static_cast<std::size_t>(sq)]; }
    Color turn() const { return turn_; }

    int pawn_count(Color c) const;

    friend bool operator==(const Board&, const Board&) = default;
    friend auto operator<=>(const Board& a, const Board& b) {
        if (auto c = a.cells_ <=> b.cells_; c != 0) return c;
        return a.turn_ <=> b.turn_;
    }

private:
    std::array<Cell, kSquares> cells_{};
    Color turn_ = Color::White;
};

Board starting_position();

// Ascending from-square; forward move before captures; captures in table order.
std::vector<Move> generate_moves(const Board& b);

// Throws IllegalMove if m is not in generate_moves(b).
Board apply_move(const Board& b, Move m);
// No legality check; m must come from generate_moves(b).
Board apply_legal_move(const Board& b, Move m);

Outcome is_terminal(const Board& b);

NetInput to_network_input(const Board& b);

// Throws UnknownMove for tuples outside the 28-entry policy table.
int output_index(Move m);
Move move_from_output_index(int index);

// Left-right reflection (columns a and c swapped), turn preserved.
Board mirror_files(const Board& b);
Move mirror_files(Move m);
// Vertical flip with colors swapped and turn flipped.
Board mirror_colors(const Board& b);

std::string square_name(int sq);
int parse_square(std::string_view name);

std::string move_to_string(Move m);
Move parse_move(std::string_view text);

// Three rows top to bottom (a3 b3 c3 / a2 b2 c2 / a1 b1 c1) using '.', 'W', 'B'.
std::string render(const Board& b);

// Accepts 9 cell characters in row order, separators ('/', whitespace) ignored,
// optionally followed by a side-to-move token "w" / "b" (default White).
Board parse_board(std::string_view text);

std::string bits_to_string(const NetInput& bits);

}  // namespace hexazero
