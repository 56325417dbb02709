#include "hexazero/game.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace hexazero {

namespace {

constexpr std::array<std::array<int, 2>, kSquares> kWhiteCaptures{{
    {-1, -1}, {-1, -1}, {-1, -1},
    {1, -1}, {0, 2}, {1, -1},
    {4, -1}, {3, 5}, {4, -1},
}};

constexpr std::array<std::array<int, 2>, kSquares> kBlackCaptures{{
    {4, -1}, {3, 5}, {4, -1},
    {7, -1}, {6, 8}, {7, -1},
    {-1, -1}, {-1, -1}, {-1, -1},
}};

// Policy output table: white forward 0-5, black forward 6-11,
// white captures 12-19, black captures 20-27.
constexpr std::array<Move, kPolicySize> kOutputMoves{{
    {6, 3}, {7, 4}, {8, 5}, {3, 0}, {4, 1}, {5, 2},
    {0, 3}, {1, 4}, {2, 5}, {3, 6}, {4, 7}, {5, 8},
    {6, 4}, {7, 3}, {7, 5}, {8, 4}, {3, 1}, {4, 0}, {4, 2}, {5, 1},
    {0, 4}, {1, 3}, {1, 5}, {2, 4}, {3, 7}, {4, 6}, {4, 8}, {5, 7},
}};

constexpr std::array<std::array<int, kSquares>, kSquares> build_index_table() {
    std::array<std::array<int, kSquares>, kSquares> t{};
    for (auto& row : t) row.fill(-1);
    for (int i = 0; i < kPolicySize; ++i) t[kOutputMoves[i].from][kOutputMoves[i].to] = i;
    return t;
}

constexpr auto kIndexTable = build_index_table();

constexpr int mirror_square(int sq) { return (sq / 3) * 3 + (2 - sq % 3); }

}  // namespace

std::string_view color_name(Color c) { return c == Color::White ? "White" : "Black"; }

Board Board::starting_position() {
    return Board({Cell::Black, Cell::Black, Cell::Black, Cell::Empty, Cell::Empty, Cell::Empty,
                  Cell::White, Cell::White, Cell::White},
                 Color::White);
}

Board starting_position() { return Board::starting_position(); }

int Board::pawn_count(Color c) const {
    return static_cast<int>(std::count(cells_.begin(), cells_.end(), cell_of(c)));
}

std::vector<Move> generate_moves(const Board& b) {
    std::vector<Move> moves;
    moves.reserve(7);
    const Cell own = cell_of(b.turn());
    const Cell enemy = cell_of(opposite(b.turn()));
    const bool white = b.turn() == Color::White;
    const auto& captures = white ? kWhiteCaptures : kBlackCaptures;
    for (int sq = 0; sq < kSquares; ++sq) {
        if (b.at(sq) != own) continue;
        const int fwd = white ? sq - 3 : sq + 3;
        if (fwd >= 0 && fwd < kSquares && b.at(fwd) == Cell::Empty)
            moves.push_back({static_cast<std::uint8_t>(sq), static_cast<std::uint8_t>(fwd)});
        for (int target : captures[sq]) {
            if (target >= 0 && b.at(target) == enemy)
                moves.push_back({static_cast<std::uint8_t>(sq), static_cast<std::uint8_t>(target)});
        }
    }
    return moves;
}

Board apply_move(const Board& b, Move m) {
    const auto legal = generate_moves(b);
    if (std::find(legal.begin(), legal.end(), m) == legal.end())
        throw IllegalMove("illegal move " + move_to_string(m));
    return apply_legal_move(b, m);
}

Board apply_legal_move(const Board& b, Move m) {
    auto cells = b.cells();
    cells[m.to] = cells[m.from];
    cells[m.from] = Cell::Empty;
    return Board(cells, opposite(b.turn()));
}

Outcome is_terminal(const Board& b) {
    for (int sq = 6; sq < 9; ++sq)
        if (b.at(sq) == Cell::Black) return {true, Color::Black};
    for (int sq = 0; sq < 3; ++sq)
        if (b.at(sq) == Cell::White) return {true, Color::White};
    if (generate_moves(b).empty()) return {true, opposite(b.turn())};
    return {false, std::nullopt};
}

NetInput to_network_input(const Board& b) {
    NetInput bits{};
    for (int sq = 0; sq < kSquares; ++sq) {
        bits[sq] = b.at(sq) == Cell::White ? 1 : 0;
        bits[kSquares + sq] = b.at(sq) == Cell::Black ? 1 : 0;
    }
    const std::uint8_t turn = b.turn() == Color::White ? 1 : 0;
    for (int i = 0; i < 3; ++i) bits[2 * kSquares + i] = turn;
    return bits;
}

int output_index(Move m) {
    if (m.from >= kSquares || m.to >= kSquares || kIndexTable[m.from][m.to] < 0)
        throw UnknownMove("no policy output for move (" + std::to_string(m.from) + ", " +
                          std::to_string(m.to) + ")");
    return kIndexTable[m.from][m.to];
}

Move move_from_output_index(int index) {
    if (index < 0 || index >= kPolicySize) throw UnknownMove("policy index out of range");
    return kOutputMoves[static_cast<std::size_t>(index)];
}

Board mirror_files(const Board& b) {
    std::array<Cell, kSquares> cells{};
    for (int sq = 0; sq < kSquares; ++sq) cells[mirror_square(sq)] = b.at(sq);
    return Board(cells, b.turn());
}

Move mirror_files(Move m) {
    return {static_cast<std::uint8_t>(mirror_square(m.from)),
            static_cast<std::uint8_t>(mirror_square(m.to))};
}

Board mirror_colors(const Board& b) {
    std::array<Cell, kSquares> cells{};
    for (int sq = 0; sq < kSquares; ++sq) {
        const int flipped = (2 - sq / 3) * 3 + sq % 3;
        const Cell c = b.at(sq);
        cells[flipped] = c == Cell::White ? Cell::Black : c == Cell::Black ? Cell::White : Cell::Empty;
    }
    return Board(cells, opposite(b.turn()));
}

std::string square_name(int sq) {
    std::string s;
    s += static_cast<char>('a' + sq % 3);
    s += static_cast<char>('3' - sq / 3);
    return s;
}

int parse_square(std::string_view name) {
    if (name.size() != 2) throw ParseError("bad square '" + std::string(name) + "'");
    const char file = static_cast<char>(std::tolower(static_cast<unsigned char>(name[0])));
    const char rank = name[1];
    if (file < 'a' || file > 'c' || rank < '1' || rank > '3')
        throw ParseError("bad square '" + std::string(name) + "'");
    return ('3' - rank) * 3 + (file - 'a');
}

std::string move_to_string(Move m) { return square_name(m.from) + square_name(m.to); }

Move parse_move(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.size() != 4) throw ParseError("bad move '" + std::string(text) + "'");
    return {static_cast<std::uint8_t>(parse_square(text.substr(0, 2))),
            static_cast<std::uint8_t>(parse_square(text.substr(2, 2)))};
}

std::string render(const Board& b) {
    std::string out;
    for (int row = 0; row < 3; ++row) {
        for (int col = 0; col < 3; ++col) {
            const Cell c = b.at(row * 3 + col);
            out += c == Cell::White ? 'W' : c == Cell::Black ? 'B' : '.';
        }
        out += '\n';
    }
    return out;
}

Board parse_board(std::string_view text) {
    std::array<Cell, kSquares> cells{};
    int filled = 0;
    std::optional<Color> turn;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '/') continue;
        if (filled < kSquares) {
            switch (ch) {
                case '.': cells[filled++] = Cell::Empty; break;
                case 'W': cells[filled++] = Cell::White; break;
                case 'B': cells[filled++] = Cell::Black; break;
                default: throw ParseError(std::string("unexpected board character '") + ch + "'");
            }
            continue;
        }
        if (turn) throw ParseError("trailing characters after side to move");
        if (ch == 'w') turn = Color::White;
        else if (ch == 'b') turn = Color::Black;
        else throw ParseError(std::string("bad side to move '") + ch + "'");
    }
    if (filled != kSquares) throw ParseError("board needs 9 cells, got " + std::to_string(filled));
    Board b(cells, turn.value_or(Color::White));
    if (b.pawn_count(Color::White) > 3 || b.pawn_count(Color::Black) > 3)
        throw ParseError("more than three pawns for one side");
    return b;
}

std::string bits_to_string(const NetInput& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto v : bits) s += static_cast<char>('0' + v);
    return s;
}

}  // namespace hexazero
