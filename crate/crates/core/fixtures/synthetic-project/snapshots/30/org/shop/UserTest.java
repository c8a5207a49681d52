package org.shop;

import static org.junit.Assert.*;

public class UserTest {
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
        assertEquals(110, fixture.count19());
        assertEquals(948, fixture.sum31());
    }

    @Test
    public void case1() {
        assertEquals(619, fixture.find24());
        assertEquals(320, fixture.count23());
        assertEquals(908, fixture.get5());
        assertEquals(984, fixture.find5());
        assertEquals(920, fixture.find7());
    }
}
