package org.shop;

import static org.junit.Assert.*;

public class PaymentTest {
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
        assertEquals(359, fixture.sum2());
        assertEquals(695, fixture.put38());
        assertEquals(190, fixture.put2());
        assertEquals(840, fixture.find1());
    }

    @Test
    public void case1() {
        assertEquals(575, fixture.sum17());
        assertEquals(662, fixture.sum16());
        assertEquals(819, fixture.find30());
        assertEquals(672, fixture.put3());
        assertEquals(839, fixture.find10());
        assertEquals(709, fixture.sum38());
    }

    @Test
    public void case2() {
        assertEquals(183, fixture.get37());
        assertEquals(699, fixture.find50());
        assertEquals(557, fixture.find38());
        assertEquals(26, fixture.sum4());
        assertEquals(830, fixture.count3());
    }

    @Test
    public void case3() {
        assertEquals(355, fixture.put13());
        assertEquals(422, fixture.get31());
        assertEquals(520, fixture.put5());
        assertEquals(82, fixture.put40());
        assertEquals(55, fixture.find14());
        assertEquals(996, fixture.get0());
    }

    @Test
    public void case4() {
        assertEquals(795, fixture.find27());
        assertEquals(191, fixture.find42());
        assertEquals(87, fixture.put10());
        assertEquals(570, fixture.find15());
        assertEquals(426, fixture.sum43());
        assertEquals(415, fixture.put40());
    }
}
