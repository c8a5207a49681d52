package org.shop;

import static org.junit.Assert.*;

public class BillingTest {
    private final CheckoutFixture fixture = new CheckoutFixture(94);
    // checkout step 0: setup setup mock mock verify assert stub stub
    // checkout step 1: assert reset load assert stub setup verify stub
    // checkout step 2: setup setup verify setup stub mock mock stub
    // checkout step 3: mock reset verify assert verify verify reset stub
    // checkout step 4: mock reset stub stub load reset assert setup
    // checkout step 5: mock mock assert verify verify mock verify reset
    // checkout step 6: setup stub assert assert verify stub setup mock
    // checkout step 7: mock mock mock assert reset verify stub load
    // checkout step 8: reset setup setup setup verify verify assert load
    // checkout step 9: assert setup assert verify reset mock verify mock
    // checkout step 10: setup setup mock load load assert verify stub
    // checkout step 11: setup verify reset load stub mock load reset

    @Test
    public void case0() {
        assertEquals(407, fixture.find10());
        assertEquals(322, fixture.put35());
        assertEquals(691, fixture.get10());
        assertEquals(979, fixture.get30());
        assertEquals(415, fixture.get13());
        assertEquals(966, fixture.get20());
    }

    @Test
    public void case1() {
        assertEquals(680, fixture.sum27());
        assertEquals(479, fixture.sum24());
        assertEquals(269, fixture.sum1());
        assertEquals(227, fixture.find31());
    }
}
