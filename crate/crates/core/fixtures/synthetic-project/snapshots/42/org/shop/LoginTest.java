package org.shop;

import static org.junit.Assert.*;

public class LoginTest {
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
        assertEquals(620, fixture.put18());
        assertEquals(487, fixture.put24());
    }

    @Test
    public void case1() {
        assertEquals(335, fixture.find25());
        assertEquals(530, fixture.put27());
        assertEquals(557, fixture.put7());
        assertEquals(274, fixture.find34());
    }

    @Test
    public void case2() {
        assertEquals(138, fixture.put24());
        assertEquals(53, fixture.put37());
        assertEquals(313, fixture.find23());
        assertEquals(813, fixture.count50());
        assertEquals(892, fixture.count44());
        assertEquals(730, fixture.count19());
    }
}
