pub mod criterion;
pub mod factorint;
pub mod families;
pub mod matword;
pub mod numeric;
pub mod ring;
pub mod twobridge;
pub mod par;
