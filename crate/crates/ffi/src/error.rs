use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use totient_verify::Error;

/// Result code of every fallible call. On anything but `Ok` a message is
/// available from `tv_last_error` on the same thread.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidNumber = 3,
    InvalidArgument = 4,
    /// A factorization ran out of budget.
    Incomplete = 5,
    Internal = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

pub(crate) struct FfiError {
    pub status: TvStatus,
    pub message: String,
}

impl FfiError {
    pub fn new(status: TvStatus, message: impl Into<String>) -> Self {
        FfiError {
            status,
            message: message.into(),
        }
    }
}

impl From<Error> for FfiError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::IncompleteFactorization => TvStatus::Incomplete,
            Error::CyclotomicIdentityViolated(_) | Error::Internal(_) => TvStatus::Internal,
            _ => TvStatus::InvalidArgument,
        };
        FfiError::new(status, e.to_string())
    }
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

/// Runs `body`, records any error message and converts panics into
/// `TvStatus::Internal`.
pub(crate) fn guard<F>(body: F) -> TvStatus
where
    F: FnOnce() -> Result<(), FfiError>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TvStatus::Ok,
        Ok(Err(e)) => {
            set_last_error(&e.message);
            e.status
        }
        Err(_) => {
            set_last_error("panic inside totient-verify");
            TvStatus::Internal
        }
    }
}

/// Message describing the most recent failure on this thread, or NULL.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tv_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}
