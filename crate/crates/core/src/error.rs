use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("coset enumeration exceeded {0} cosets (inconclusive)")]
    LimitExceeded(usize),
    #[error("coset table does not match presentation: {0}")]
    TableMismatch(String),
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("malformed PD code: {0}")]
    MalformedPd(String),
    #[error("group ring elements live over different groups")]
    GroupMismatch,
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("invalid instruction: {0}")]
    InvalidInstruction(String),
    #[error("self-clasp along the identity element")]
    IdentitySelfClasp,
    #[error("matrix is not Hermitian: {0}")]
    NotHermitian(String),
    #[error("framing {framing} of component {index} disagrees with augmented diagonal {augmented}")]
    FramingInconsistent { index: usize, framing: i64, augmented: i64 },
    #[error("diagonal entry {0} is not mu + involute(mu)")]
    MuMismatch(usize),
    #[error("form is not even")]
    NotEven,
    #[error("form is not unimodular")]
    NotUnimodular,
    #[error("form is degenerate")]
    Degenerate,
    #[error("form is not symmetric")]
    NotSymmetric,
    #[error("signature {signature} is not divisible by {step} in the {category} category")]
    SignatureObstructed { signature: i64, step: i64, category: &'static str },
    #[error("signature {0} is nonzero")]
    NonzeroSignature(i64),
    #[error("rank {0} is too small")]
    RankTooSmall(usize),
    #[error("isotropic vector search exhausted at bound {0} (inconclusive)")]
    SearchExhausted(i64),
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("group is not finite or table is not regular: {0}")]
    NotRegular(String),
    #[error("invalid QmInstance: {0}")]
    InvalidInstance(String),
}

impl Error {
    /// Outcomes caused by a resource bound rather than a mathematical answer.
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::LimitExceeded(_) | Error::SearchExhausted(_))
    }
}
