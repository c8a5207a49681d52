package org.shop;

import static org.junit.Assert.*;

public class OrderTest {
    private final OrderFixture fixture = new OrderFixture(47);
    // order step 0: load assert assert verify stub assert assert verify
    // order step 1: assert assert assert stub assert mock load mock
    // order step 2: load stub setup verify load mock verify reset
    // order step 3: setup verify verify mock setup assert verify stub
    // order step 4: setup setup reset stub stub mock load assert
    // order step 5: assert setup verify stub verify reset assert load
    // order step 6: setup verify mock load stub setup load verify
    // order step 7: load load mock load assert stub setup load
    // order step 8: reset stub verify load assert mock assert mock
    // order step 9: verify setup stub load mock assert mock verify

    @Test
    public void case0() {
        assertEquals(293, fixture.put0());
        assertEquals(944, fixture.get1());
        assertEquals(339, fixture.find25());
    }

    @Test
    public void case1() {
        assertEquals(391, fixture.find16());
        assertEquals(225, fixture.find3());
        assertEquals(316, fixture.count19());
    }
}
