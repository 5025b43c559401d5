//! Exercises the C ABI end to end from Rust: handle lifecycles, buffer
//! protocols, error codes and messages. A separate test compiles the
//! committed header as C to keep it in sync syntactically.

use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use nashimpl_ffi::*;

const DEMO_PROFILE: &str = "outcomes: 6\nplayers: 3\npref 1: 4 > 2 > 1 = 3 = 5 = 6\npref 2: 6 > 3 > 1 = 2 = 4 = 5\npref 3: 5 > 1 > 2 = 3 = 4 = 6\n";

fn c(text: &str) -> CString {
    CString::new(text).unwrap()
}

fn last_error() -> String {
    unsafe {
        CStr::from_ptr(ni_last_error_message())
            .to_string_lossy()
            .into_owned()
    }
}

#[test]
fn version_is_a_static_string() {
    let version = unsafe { CStr::from_ptr(ni_version()) };
    assert!(!version.to_bytes().is_empty());
}

#[test]
fn profile_round_trip_through_the_abi() {
    unsafe {
        let mut profile: *mut NiProfile = ptr::null_mut();
        let text = c(DEMO_PROFILE);
        assert_eq!(ni_profile_parse(text.as_ptr(), &mut profile), NiStatus::Ok);
        assert_eq!(ni_profile_players(profile), 3);
        assert_eq!(ni_profile_outcomes(profile), 6);

        let mut rendered: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(ni_profile_format(profile, &mut rendered), NiStatus::Ok);
        let round = CStr::from_ptr(rendered).to_str().unwrap().to_owned();
        ni_string_free(rendered);

        let mut again: *mut NiProfile = ptr::null_mut();
        let round_c = c(&round);
        assert_eq!(ni_profile_parse(round_c.as_ptr(), &mut again), NiStatus::Ok);
        assert_eq!(ni_profile_players(again), 3);
        ni_profile_free(profile);
        ni_profile_free(again);
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    unsafe {
        let mut profile: *mut NiProfile = ptr::null_mut();
        let bad = c("outcomes: 2\nplayers: 1\npref 1: 1 > 1 = 2\n");
        assert_eq!(
            ni_profile_parse(bad.as_ptr(), &mut profile),
            NiStatus::ParseError
        );
        let message = last_error();
        assert!(message.contains("line 3"), "{message}");
        assert!(profile.is_null());
    }
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        let mut profile: *mut NiProfile = ptr::null_mut();
        assert_eq!(
            ni_profile_parse(ptr::null(), &mut profile),
            NiStatus::NullPointer
        );
        assert_eq!(
            ni_profile_parse(c("x").as_ptr(), ptr::null_mut()),
            NiStatus::NullPointer
        );
        ni_profile_free(ptr::null_mut()); // no-op
        ni_assignment_free(ptr::null_mut());
        ni_game_form_free(ptr::null_mut());
        ni_string_free(ptr::null_mut());
    }
}

#[test]
fn liberal_rule_and_equilibria_agree_on_the_demo() {
    unsafe {
        let mut profile: *mut NiProfile = ptr::null_mut();
        assert_eq!(
            ni_profile_parse(c(DEMO_PROFILE).as_ptr(), &mut profile),
            NiStatus::Ok
        );
        let mut assignment: *mut NiAssignment = ptr::null_mut();
        assert_eq!(
            ni_assignment_parse(c("2,4;3,6;1,5").as_ptr(), 6, &mut assignment),
            NiStatus::Ok
        );
        assert!(ni_assignment_is_disjoint(assignment));
        assert_eq!(ni_assignment_players(assignment), 3);

        let mut rule = [0u32; 8];
        let mut written = 0usize;
        assert_eq!(
            ni_liberal_rule(
                assignment,
                profile,
                rule.as_mut_ptr(),
                rule.len(),
                &mut written
            ),
            NiStatus::Ok
        );
        assert_eq!(&rule[..written], &[4, 5, 6]);

        let mut form: *mut NiGameForm = ptr::null_mut();
        assert_eq!(ni_game_form_liberal(assignment, &mut form), NiStatus::Ok);
        assert_eq!(ni_game_form_players(form), 3);
        let mut eq = [0u32; 8];
        assert_eq!(
            ni_equilibrium_outcomes(form, profile, 0, eq.as_mut_ptr(), eq.len(), &mut written),
            NiStatus::Ok
        );
        assert_eq!(&eq[..written], &[4, 5, 6]);

        // Buffer-too-small protocol reports the needed length.
        let mut tiny = [0u32; 1];
        let mut needed = 0usize;
        assert_eq!(
            ni_equilibrium_outcomes(form, profile, 0, tiny.as_mut_ptr(), 1, &mut needed),
            NiStatus::BufferTooSmall
        );
        assert_eq!(needed, 3);

        ni_game_form_free(form);
        ni_assignment_free(assignment);
        ni_profile_free(profile);
    }
}

#[test]
fn matrix_game_forms_parse_and_solve() {
    unsafe {
        let mut form: *mut NiGameForm = ptr::null_mut();
        let text = c("outcomes: 6\nrows: 1\ncols: 1\nrow 1: 1\n");
        assert_eq!(
            ni_game_form_matrix_parse(text.as_ptr(), &mut form),
            NiStatus::Ok
        );
        let two = c("outcomes: 6\nplayers: 2\npref 1: 1 > 2 > 3 > 4 > 5 > 6\npref 2: 6 > 5 > 4 > 3 > 2 > 1\n");
        let mut profile: *mut NiProfile = ptr::null_mut();
        assert_eq!(ni_profile_parse(two.as_ptr(), &mut profile), NiStatus::Ok);
        let mut buffer = [0u32; 4];
        let mut written = 0usize;
        assert_eq!(
            ni_equilibrium_outcomes(form, profile, 0, buffer.as_mut_ptr(), 4, &mut written),
            NiStatus::Ok
        );
        assert_eq!(&buffer[..written], &[1]);
        ni_profile_free(profile);
        ni_game_form_free(form);
    }
}

#[test]
fn mechanism_construction_rejects_two_players() {
    unsafe {
        let mut assignment: *mut NiAssignment = ptr::null_mut();
        assert_eq!(ni_assignment_canonical(2, 4, &mut assignment), NiStatus::Ok);
        let mut form: *mut NiGameForm = ptr::null_mut();
        assert_eq!(
            ni_game_form_liberal(assignment, &mut form),
            NiStatus::InvalidArgument
        );
        assert!(last_error().contains("three players"));
        ni_assignment_free(assignment);
    }
}

#[test]
fn verification_through_the_abi_is_clean() {
    unsafe {
        let mut tested = 0u64;
        let mut violations = u64::MAX;
        assert_eq!(
            ni_verify_liberal(
                3,
                6,
                ptr::null(),
                1_000,
                42,
                0,
                &mut tested,
                &mut violations
            ),
            NiStatus::Ok
        );
        assert!(tested >= 1_000);
        assert_eq!(violations, 0);

        // Invalid bounds surface as InvalidArgument, not a crash.
        assert_eq!(
            ni_verify_liberal(2, 4, ptr::null(), 10, 0, 0, &mut tested, &mut violations),
            NiStatus::InvalidArgument
        );
    }
}

#[test]
fn overlap_witness_through_the_abi() {
    unsafe {
        let mut assignment: *mut NiAssignment = ptr::null_mut();
        assert_eq!(
            ni_assignment_parse(c("1,4;2,4;3,4").as_ptr(), 4, &mut assignment),
            NiStatus::Ok
        );
        assert!(!ni_assignment_is_disjoint(assignment));
        let (mut shared, mut fin, mut fout) = (0u32, u32::MAX, u32::MAX);
        assert_eq!(
            ni_overlap_witness(assignment, &mut shared, &mut fin, &mut fout),
            NiStatus::Ok
        );
        assert_eq!(shared, 4);
        assert_ne!(fin, fout);
        ni_assignment_free(assignment);

        // Disjoint assignments have nothing to witness.
        let mut disjoint: *mut NiAssignment = ptr::null_mut();
        assert_eq!(ni_assignment_canonical(3, 6, &mut disjoint), NiStatus::Ok);
        assert_eq!(
            ni_overlap_witness(disjoint, &mut shared, &mut fin, &mut fout),
            NiStatus::InvalidArgument
        );
        ni_assignment_free(disjoint);
    }
}

/// The committed header must stay valid C. Skips silently when no C
/// compiler is on PATH.
#[test]
fn header_compiles_as_c99() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/nashimpl.h");
    let result = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", header])
        .output();
    match result {
        Ok(output) => assert!(
            output.status.success(),
            "header failed to compile:\n{}",
            String::from_utf8_lossy(&output.stderr)
        ),
        Err(_) => eprintln!("cc not found; skipping header syntax check"),
    }
}
