use fingap::elliptic::ExactRoots;
use fingap::hp::field;
use fingap::spectral::{spectral_data, Coupling};
use rug::Rational;

#[test]
fn lame_two_spectral_polynomial() -> fingap::Result<()> {
    let f = field(&ExactRoots::from_ints(3, -1, -2)?);
    let sd = spectral_data(&f, Coupling([2, 0, 0, 0]))?;
    assert_eq!(sd.q.deg(), 5);
    assert_eq!(sd.q.eval(&Rational::from(9)), 0);
    Ok(())
}
