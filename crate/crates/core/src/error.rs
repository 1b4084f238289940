use thiserror::Error;

use crate::campaign::CampaignError;
use crate::classify::ClassifyError;
use crate::cones::ConeError;
use crate::linalg::LinAlgError;
use crate::poset::text::TextError;
use crate::poset::PosetError;
use crate::quadform::QuadFormError;
use crate::simplex_min::SimplexError;

/// Any failure of the library, with the process exit code it maps to.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Text(#[from] TextError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    QuadForm(#[from] QuadFormError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Campaign(#[from] CampaignError),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_ALARM: i32 = 4;

fn poset_code(e: &PosetError) -> i32 {
    match e {
        PosetError::CapExceeded { .. } => EXIT_CAP,
        PosetError::NotConnected | PosetError::CyclicGraph => EXIT_ALARM,
        _ => EXIT_PARSE,
    }
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Text(TextError::Parse { .. }) => EXIT_PARSE,
            Error::Text(TextError::Poset(e)) | Error::Poset(e) => poset_code(e),
            Error::Simplex(SimplexError::CapExceeded { .. }) => EXIT_CAP,
            Error::Simplex(_) => EXIT_PARSE,
            Error::Classify(ClassifyError::Simplex(SimplexError::CapExceeded { .. })) => EXIT_CAP,
            Error::Classify(ClassifyError::Poset(e)) => poset_code(e),
            Error::Classify(ClassifyError::BadRational(_)) => EXIT_PARSE,
            Error::Campaign(CampaignError::Poset(e)) => poset_code(e),
            Error::Campaign(CampaignError::UnknownCampaign(_) | CampaignError::BadRow { .. }) => EXIT_PARSE,
            Error::Campaign(CampaignError::Io(_)) => EXIT_PARSE,
            _ => EXIT_ALARM,
        }
    }
}
