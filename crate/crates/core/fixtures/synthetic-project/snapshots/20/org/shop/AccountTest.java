package org.shop;

import static org.junit.Assert.*;

public class AccountTest {
    private final UserFixture fixture = new UserFixture(55);
    // user step 0: setup mock load assert mock load mock assert
    // user step 1: verify load assert setup load setup verify stub
    // user step 2: setup setup assert assert verify assert setup stub
    // user step 3: setup mock assert assert load verify load assert
    // user step 4: setup load stub reset stub stub load verify
    // user step 5: load mock reset verify verify setup setup mock
    // user step 6: setup reset setup setup reset assert mock load
    // user step 7: verify reset load stub setup mock reset stub
    // user step 8: verify reset assert stub setup mock reset mock

    @Test
    public void case0() {
        assertEquals(736, fixture.put4());
        assertEquals(653, fixture.count12());
        assertEquals(352, fixture.get43());
        assertEquals(617, fixture.get11());
    }

    @Test
    public void case1() {
        assertEquals(853, fixture.put8());
        assertEquals(544, fixture.sum39());
        assertEquals(441, fixture.put40());
        assertEquals(198, fixture.sum15());
        assertEquals(7, fixture.sum48());
        assertEquals(494, fixture.count30());
    }

    @Test
    public void case2() {
        assertEquals(695, fixture.get5());
        assertEquals(95, fixture.count9());
    }
}
