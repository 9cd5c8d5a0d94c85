//! Thin wrappers over the LAPACK routines used by the dense oracle.
//! All matrices are column-major, as LAPACK expects.

use crate::error::{Error, Result};
use crate::linalg::C64;

extern "C" {
    fn zgeev_(
        jobvl: *const u8,
        jobvr: *const u8,
        n: *const i32,
        a: *mut C64,
        lda: *const i32,
        w: *mut C64,
        vl: *mut C64,
        ldvl: *const i32,
        vr: *mut C64,
        ldvr: *const i32,
        work: *mut C64,
        lwork: *const i32,
        rwork: *mut f64,
        info: *mut i32,
    );
    fn zgetrf_(
        m: *const i32,
        n: *const i32,
        a: *mut C64,
        lda: *const i32,
        ipiv: *mut i32,
        info: *mut i32,
    );
    fn zgetrs_(
        trans: *const u8,
        n: *const i32,
        nrhs: *const i32,
        a: *const C64,
        lda: *const i32,
        ipiv: *const i32,
        b: *mut C64,
        ldb: *const i32,
        info: *mut i32,
    );
    fn zgesvd_(
        jobu: *const u8,
        jobvt: *const u8,
        m: *const i32,
        n: *const i32,
        a: *mut C64,
        lda: *const i32,
        s: *mut f64,
        u: *mut C64,
        ldu: *const i32,
        vt: *mut C64,
        ldvt: *const i32,
        work: *mut C64,
        lwork: *const i32,
        rwork: *mut f64,
        info: *mut i32,
    );
}

/// Eigenvalues and right eigenvectors of a dense n x n matrix.
/// `a` is consumed as scratch. Returns (w, vr) with vr column-major.
pub fn eig(mut a: Vec<C64>, n: usize) -> Result<(Vec<C64>, Vec<C64>)> {
    let ni = n as i32;
    let mut w = vec![C64::new(0.0, 0.0); n];
    let mut vr = vec![C64::new(0.0, 0.0); n * n];
    let mut rwork = vec![0.0f64; 2 * n];
    let mut info = 0i32;
    let mut query = [C64::new(0.0, 0.0)];
    unsafe {
        zgeev_(
            b"N".as_ptr(),
            b"V".as_ptr(),
            &ni,
            a.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            std::ptr::null_mut(),
            &1,
            vr.as_mut_ptr(),
            &ni,
            query.as_mut_ptr(),
            &-1,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::DiagonalizationFailure { info });
    }
    let lwork = query[0].re as i32;
    let mut work = vec![C64::new(0.0, 0.0); lwork as usize];
    unsafe {
        zgeev_(
            b"N".as_ptr(),
            b"V".as_ptr(),
            &ni,
            a.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            std::ptr::null_mut(),
            &1,
            vr.as_mut_ptr(),
            &ni,
            work.as_mut_ptr(),
            &lwork,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::DiagonalizationFailure { info });
    }
    Ok((w, vr))
}

/// LU factorization in place; returns the pivot vector.
pub fn lu_factor(a: &mut [C64], n: usize) -> Result<Vec<i32>> {
    let ni = n as i32;
    let mut ipiv = vec![0i32; n];
    let mut info = 0i32;
    unsafe {
        zgetrf_(&ni, &ni, a.as_mut_ptr(), &ni, ipiv.as_mut_ptr(), &mut info);
    }
    if info != 0 {
        return Err(Error::DiagonalizationFailure { info });
    }
    Ok(ipiv)
}

/// Solves A x = b in place using a factorization from lu_factor.
pub fn lu_solve(lu: &[C64], ipiv: &[i32], b: &mut [C64], n: usize) -> Result<()> {
    let ni = n as i32;
    let one = 1i32;
    let mut info = 0i32;
    unsafe {
        zgetrs_(
            b"N".as_ptr(),
            &ni,
            &one,
            lu.as_ptr(),
            &ni,
            ipiv.as_ptr(),
            b.as_mut_ptr(),
            &ni,
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::DiagonalizationFailure { info });
    }
    Ok(())
}

/// Singular values of a dense n x n matrix (descending). `a` is scratch.
pub fn singular_values(mut a: Vec<C64>, n: usize) -> Result<Vec<f64>> {
    let ni = n as i32;
    let mut s = vec![0.0f64; n];
    let mut rwork = vec![0.0f64; 5 * n];
    let mut info = 0i32;
    let mut query = [C64::new(0.0, 0.0)];
    unsafe {
        zgesvd_(
            b"N".as_ptr(),
            b"N".as_ptr(),
            &ni,
            &ni,
            a.as_mut_ptr(),
            &ni,
            s.as_mut_ptr(),
            std::ptr::null_mut(),
            &1,
            std::ptr::null_mut(),
            &1,
            query.as_mut_ptr(),
            &-1,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::DiagonalizationFailure { info });
    }
    let lwork = query[0].re as i32;
    let mut work = vec![C64::new(0.0, 0.0); lwork as usize];
    unsafe {
        zgesvd_(
            b"N".as_ptr(),
            b"N".as_ptr(),
            &ni,
            &ni,
            a.as_mut_ptr(),
            &ni,
            s.as_mut_ptr(),
            std::ptr::null_mut(),
            &1,
            std::ptr::null_mut(),
            &1,
            work.as_mut_ptr(),
            &lwork,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::DiagonalizationFailure { info });
    }
    Ok(s)
}
