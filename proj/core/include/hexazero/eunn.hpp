#pragma once

// Efficiently updatable quantized evaluator over HalfKP features.
//
// Squares are numbered a1=0 ... h8=63 (file-major within rank). Each perspective
// sees the board through its own king: feature = king_sq * 640 + kind * 64 + piece_sq,
// with kinds 0..4 for the perspective's own P,N,B,R,Q and 5..9 for the enemy's.
// Black's perspective flips squares vertically (sq ^ 56), so a position and its
// color-swapped mirror produce identical (side-to-move, other) feature pairs.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hexazero/game.hpp"
#include "hexazero/rng.hpp"

namespace hexazero::eunn {

inline constexpr int kBoardSquares = 64;
inline constexpr int kFeatureKinds = 10;
inline constexpr int kFeatures = kBoardSquares * kFeatureKinds * kBoardSquares;  // 40960
inline constexpr int kDefaultHalfWidth = 256;
inline constexpr int kDefaultL2 = 32;
inline constexpr int kDefaultL3 = 32;
inline constexpr int kActivationMax = 127;

enum class PieceKind : std::uint8_t { Pawn, Knight, Bishop, Rook, Queen, King };

struct Piece {
    PieceKind kind = PieceKind::Pawn;
    Color color = Color::White;

    friend constexpr bool operator==(Piece, Piece) = default;
};

constexpr int color_index(Color c) { return c == Color::White ? 0 : 1; }
constexpr int rank_of(int sq) { return sq >> 3; }
constexpr int file_of(int sq) { return sq & 7; }

class InvalidPosition : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ChessPosition {
public:
    ChessPosition() = default;

    const std::optional<Piece>& at(int sq) const { return squares_.at(static_cast<std::size_t>(sq)); }
    void set(int sq, std::optional<Piece> p) { squares_.at(static_cast<std::size_t>(sq)) = p; }
    Color side_to_move() const { return side_to_move_; }
    void set_side_to_move(Color c) { side_to_move_ = c; }

    // Throws InvalidPosition if the king is missing.
    int king_square(Color c) const;
    int piece_count() const;
    // One king per color, no pawns on ranks 1 or 8.
    void validate() const;

    friend bool operator==(const ChessPosition&, const ChessPosition&) = default;

private:
    std::array<std::optional<Piece>, kBoardSquares> squares_{};
    Color side_to_move_ = Color::White;
};

// Piece placement and active color; remaining FEN fields are accepted and ignored.
ChessPosition parse_fen(std::string_view fen);
std::string to_fen(const ChessPosition& p);

// Colors swapped, board flipped vertically, side to move flipped.
ChessPosition mirror(const ChessPosition& p);

// Two kings, 0..14 further pieces, pawns never on ranks 1/8, random side to move.
ChessPosition random_position(Rng& rng);

struct FeatureIndex {
    std::uint16_t value = 0;

    friend constexpr auto operator<=>(FeatureIndex, FeatureIndex) = default;
};

class OutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Throws OutOfRange.
FeatureIndex feature_index(int king_sq, int kind, int piece_sq);
int perspective_transform(int sq, Color perspective);
// Sorted ascending.
std::vector<FeatureIndex> active_features(const ChessPosition& p, Color perspective);

struct ChessMove {
    int from = 0;
    int to = 0;
    std::optional<PieceKind> promotion;

    friend bool operator==(const ChessMove&, const ChessMove&) = default;
};

class MalformedMove : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct HalfDelta {
    std::vector<FeatureIndex> removed;
    std::vector<FeatureIndex> added;
    bool needs_refresh = false;  // this perspective's own king moved
};

struct FeatureDelta {
    std::array<HalfDelta, 2> halves;  // indexed by color_index

    HalfDelta& half(Color c) { return halves[static_cast<std::size_t>(color_index(c))]; }
    const HalfDelta& half(Color c) const { return halves[static_cast<std::size_t>(color_index(c))]; }
};

// Throws MalformedMove unless from holds a side-to-move piece, to is on the board and does
// not hold a king or an own piece, and promotion is given exactly for pawns reaching the last rank.
FeatureDelta move_delta(const ChessPosition& p, const ChessMove& m);
ChessPosition make_move(const ChessPosition& p, const ChessMove& m);
// A null move (side to move flipped) changes no features.
ChessPosition make_null_move(const ChessPosition& p);

// Geometric piece moves for the side to move; no castling, en passant or check detection,
// king captures excluded, single-step pawn pushes only.
std::vector<ChessMove> pseudo_legal_moves(const ChessPosition& p);

// ------------------------------------------------------------------ quantized network

struct QuantEvalNet {
    int half_width = kDefaultHalfWidth;
    int l2_width = kDefaultL2;
    int l3_width = kDefaultL3;
    std::vector<std::int16_t> input_weights;  // kFeatures x half_width, feature-major
    std::vector<std::int16_t> input_biases;   // half_width
    std::vector<std::int8_t> l2_weights;      // l2 x (2 * half_width), row-major
    std::vector<std::int32_t> l2_biases;
    std::vector<std::int8_t> l3_weights;      // l3 x l2
    std::vector<std::int32_t> l3_biases;
    std::vector<std::int8_t> output_weights;  // l3
    std::int32_t output_bias = 0;
    std::uint8_t activation_shift = 6;
    std::int32_t output_scale = 16;

    static QuantEvalNet zeros(int half_width = kDefaultHalfWidth, int l2 = kDefaultL2, int l3 = kDefaultL3);
    // Input weights drawn from [-input_range, input_range]; dense weights over the full int8 range.
    static QuantEvalNet random(Rng& rng, int half_width = kDefaultHalfWidth, int input_range = 64);

    std::span<const std::int16_t> column(FeatureIndex f) const {
        return {input_weights.data() + static_cast<std::size_t>(f.value) * half_width,
                static_cast<std::size_t>(half_width)};
    }
    void check_shapes() const;

    friend bool operator==(const QuantEvalNet&, const QuantEvalNet&) = default;
};

class AccumulatorOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

class DirtyAccumulator : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Accumulator {
    std::array<std::vector<std::int16_t>, 2> halves;  // indexed by color_index
    std::array<bool, 2> dirty{true, true};

    std::span<const std::int16_t> half(Color c) const { return halves[static_cast<std::size_t>(color_index(c))]; }
    bool is_dirty(Color c) const { return dirty[static_cast<std::size_t>(color_index(c))]; }
};

// Bias plus the weight columns of every active feature. Throws AccumulatorOverflow.
void refresh(Accumulator& acc, const ChessPosition& p, const QuantEvalNet& net);
void refresh_half(Accumulator& acc, const ChessPosition& p, Color perspective, const QuantEvalNet& net);
// Column subtractions then additions on every half not flagged for refresh; flagged halves
// are marked dirty. Throws DirtyAccumulator if an updated half is dirty, AccumulatorOverflow.
void apply_delta(Accumulator& acc, const FeatureDelta& delta, const QuantEvalNet& net);
// apply_delta followed by refresh of flagged halves against the post-move position.
void update(Accumulator& acc, const ChessPosition& after, const FeatureDelta& delta, const QuantEvalNet& net);

// clamp(x >> shift, 0, 127)
std::vector<std::uint8_t> clipped_relu_q(std::span<const std::int32_t> x, int shift);
std::uint8_t clipped_relu_q(std::int32_t x, int shift);
// sum a_i * b_i, products combined in adjacent pairs before the 32-bit accumulate.
std::int32_t madd_pairs(std::span<const std::uint8_t> a, std::span<const std::int8_t> b);

// Centipawns from the side to move's perspective. Throws DirtyAccumulator.
int evaluate(const ChessPosition& p, const Accumulator& acc, const QuantEvalNet& net);
// Fresh accumulator, then evaluate.
int evaluate(const ChessPosition& p, const QuantEvalNet& net);

// Binary "EUNN0001", little-endian.
void write_weights(std::ostream& os, const QuantEvalNet& net);
QuantEvalNet read_weights(std::istream& is);
void save_weights(const QuantEvalNet& net, const std::filesystem::path& path);
QuantEvalNet load_weights(const std::filesystem::path& path);

// ------------------------------------------------------------------ material targets

inline constexpr std::array<int, 5> kMaterialValues{100, 310, 320, 500, 900};
extern const std::array<std::array<int, 8>, 8> kPieceSquareTable;

// White minus Black material (plus the piece-square bonus, indexed [file][rank] for both
// colors), negated when Black is to move.
int material_eval(const ChessPosition& p, bool use_piece_square);

}  // namespace hexazero::eunn
