use att_core::CheckError;
use att_model::error::ModelError;
use thiserror::Error;

pub type IResult<T> = Result<T, InterpError>;

#[derive(Debug, Error)]
pub enum InterpError {
    #[error("{0} unsupported in shipped model")]
    Unsupported(&'static str),
    #[error("base type `{ty}` has no interpretation in model `{model}`")]
    MissingBaseType { ty: String, model: String },
    #[error("{0}")]
    Model(#[from] ModelError),
    #[error("{0}")]
    Check(#[from] CheckError),
    #[error("interpretation mismatch: {0}")]
    Mismatch(String),
}
