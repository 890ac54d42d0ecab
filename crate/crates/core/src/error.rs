use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signature must have at least one chain")]
    EmptySignature,
    #[error("chain {index} has order 0; orders must be positive")]
    ZeroOrder { index: usize },
    #[error("signature mismatch: expected {expected} coordinates, found {found}")]
    SignatureMismatch { expected: usize, found: usize },
    #[error("coordinate {coordinate}: numerator {numerator} exceeds chain order {order}")]
    OutOfRange {
        coordinate: usize,
        numerator: u32,
        order: u32,
    },
    #[error("{what} has {size} elements, above the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("map entry {index} points to {target}, outside 0..{bound}")]
    MapOutOfRange { index: usize, target: usize, bound: usize },
    #[error("empty map")]
    EmptyMap,
    #[error(
        "divisibility: coordinate {coordinate} (order {order}) cannot copy coordinate {source_coordinate} (order {source_order})"
    )]
    Divisibility {
        coordinate: usize,
        order: u32,
        source_coordinate: usize,
        source_order: u32,
    },
    #[error("idempotence: σ(σ({point}))={twice}≠σ({point})={once}")]
    NotIdempotent { point: usize, once: usize, twice: usize },
    #[error("algebra is not Boolean (chain orders {orders:?})")]
    NotBoolean { orders: Vec<u32> },
    #[error("morphism does not intertwine the operators at index {index}")]
    NotIntertwining { index: usize },
    #[error("not an ultrafilter: {0}")]
    NotUltrafilter(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("affine map does not send vertex {vertex} to a vertex")]
    NotVertexPreserving { vertex: usize },
}
